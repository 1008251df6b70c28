// One in-flight request at a time; while busy only the newest pending job is
// kept, so a burst of slider gestures collapses to the final position.

export type Job<T> = () => Promise<T>;

export class LatestWinsQueue<T> {
  private inFlight = false;
  private pending: { job: Job<T>; resolve: (v: T) => void; reject: (e: unknown) => void } | null =
    null;

  submit(job: Job<T>): Promise<T> {
    return new Promise<T>((resolve, reject) => {
      if (this.pending) {
        // drop the stale gesture; its caller sees a benign rejection
        this.pending.reject(new SupersededError());
      }
      this.pending = { job, resolve, reject };
      void this.drain();
    });
  }

  private async drain(): Promise<void> {
    if (this.inFlight || !this.pending) return;
    const { job, resolve, reject } = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      resolve(await job());
    } catch (err) {
      reject(err);
    } finally {
      this.inFlight = false;
      void this.drain();
    }
  }
}

export class SupersededError extends Error {
  constructor() {
    super("superseded by a newer gesture");
  }
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return (...args: A) => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, waitMs);
  };
}
