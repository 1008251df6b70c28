// Typed client for the editing service. The UI never computes on latent
// codes; everything shown comes back in these payloads.

export interface ResolvedDirection {
  attribute: string;
  conditions: string[];
  name: string;
  normal: number[];
  cosines: Record<string, number | null>;
}

export interface ViewPayload {
  latent: number[];
  space: string;
  scores: Record<string, number>;
  distances: Record<string, number | null>;
  face: Record<string, unknown>;
  svg: string;
  history_length: number;
  seed: number | null;
  resolved_direction?: ResolvedDirection;
}

export interface GeneratorInfo {
  config: { d: number; attributes: string[]; noise_sigma: number; space: string };
  attributes: string[];
  boundaries_loaded: string[];
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const text = await response.text();
  if (!response.ok) {
    let detail = text;
    try {
      detail = (JSON.parse(text) as { detail?: string }).detail ?? text;
    } catch {
      // keep the raw body
    }
    throw new ApiError(detail, response.status);
  }
  return JSON.parse(text) as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  generator(): Promise<GeneratorInfo> {
    return fetch(`${this.base}/api/generator`).then((r) => asJson<GeneratorInfo>(r));
  }

  sample(seed?: number): Promise<ViewPayload> {
    return fetch(`${this.base}/api/sample`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(seed === undefined ? {} : { seed }),
    }).then((r) => asJson<ViewPayload>(r));
  }

  edit(attribute: string, alpha: number, conditions: string[]): Promise<ViewPayload> {
    return fetch(`${this.base}/api/edit`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ attribute, alpha, conditions }),
    }).then((r) => asJson<ViewPayload>(r));
  }

  boundaries(): Promise<Record<string, unknown>> {
    return fetch(`${this.base}/api/boundaries`).then((r) => asJson<Record<string, unknown>>(r));
  }

  fitBoundaries(): Promise<unknown> {
    return fetch(`${this.base}/api/boundaries/fit`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({}),
    }).then((r) => asJson<unknown>(r));
  }
}
