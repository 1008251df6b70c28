// Editor state and its pure transitions. Slider values are absolute offsets
// from the session's sampled latent; each gesture sends only the delta to the
// service, whose edits merge per direction, so returning a slider to its
// previous value restores the displayed latent bit for bit.

import type { ViewPayload } from "./api.js";

export const SLIDER_MIN = -6;
export const SLIDER_MAX = 6;

export interface EditorState {
  attributes: string[];
  sliders: Record<string, number>;
  conditions: Record<string, boolean>;
  latent: number[];
  scores: Record<string, number>;
  distances: Record<string, number | null>;
  svg: string;
  historyLength: number;
  seed: number | null;
  resolvedCosines: Record<string, number | null> | null;
  resolvedLabel: string | null;
  warning: string | null;
  banner: string | null;
}

export function initialState(attributes: string[]): EditorState {
  return {
    attributes: [...attributes],
    sliders: Object.fromEntries(attributes.map((a) => [a, 0])),
    conditions: Object.fromEntries(attributes.map((a) => [a, false])),
    latent: [],
    scores: {},
    distances: {},
    svg: "",
    historyLength: 0,
    seed: null,
    resolvedCosines: null,
    resolvedLabel: null,
    warning: null,
    banner: null,
  };
}

export interface ClampResult {
  alpha: number;
  warned: boolean;
}

export function clampAlpha(alpha: number): ClampResult {
  if (alpha > SLIDER_MAX) return { alpha: SLIDER_MAX, warned: true };
  if (alpha < SLIDER_MIN) return { alpha: SLIDER_MIN, warned: true };
  return { alpha, warned: false };
}

// Condition set for a gesture: every toggled attribute except the one being
// moved (an attribute can never condition itself).
export function conditionSetFor(state: EditorState, attribute: string): string[] {
  return state.attributes.filter((a) => a !== attribute && state.conditions[a]);
}

export function sliderDelta(state: EditorState, attribute: string, newAlpha: number): number {
  return newAlpha - (state.sliders[attribute] ?? 0);
}

export function toggleCondition(state: EditorState, attribute: string): EditorState {
  return {
    ...state,
    conditions: { ...state.conditions, [attribute]: !state.conditions[attribute] },
  };
}

// Everything numeric is copied from the payload untouched.
function absorb(state: EditorState, payload: ViewPayload): EditorState {
  return {
    ...state,
    latent: payload.latent,
    scores: payload.scores,
    distances: payload.distances,
    svg: payload.svg,
    historyLength: payload.history_length,
    seed: payload.seed,
  };
}

export function applySampleResponse(state: EditorState, payload: ViewPayload): EditorState {
  return {
    ...absorb(state, payload),
    sliders: Object.fromEntries(state.attributes.map((a) => [a, 0])),
    resolvedCosines: null,
    resolvedLabel: null,
    warning: null,
    banner: null,
  };
}

export function applyEditResponse(
  state: EditorState,
  attribute: string,
  alpha: number,
  payload: ViewPayload,
  warned: boolean,
): EditorState {
  const next = absorb(state, payload);
  next.sliders = { ...state.sliders, [attribute]: alpha };
  next.resolvedCosines = payload.resolved_direction?.cosines ?? null;
  next.resolvedLabel = payload.resolved_direction?.name ?? null;
  next.warning = warned
    ? `alpha clamped to [${SLIDER_MIN}, ${SLIDER_MAX}] (distance-effect zone)`
    : null;
  next.banner = null;
  return next;
}

export function withBanner(state: EditorState, message: string): EditorState {
  return { ...state, banner: message };
}
