/** Scrub/animation support: debounced slider fetches and precomputed
 * t-grid batches so animation never waits on a per-frame round trip.
 */

export type Clock = () => number;

/**
 * Rate limiter for slider drags: invokes immediately when idle, then at
 * most once per interval, always ending with the latest arguments.
 */
export function rateLimited<A extends unknown[]>(
  fn: (...args: A) => void,
  intervalMs: number,
  clock: Clock = () => Date.now(),
  schedule: (cb: () => void, ms: number) => void = (cb, ms) => {
    setTimeout(cb, ms);
  },
): (...args: A) => void {
  let lastRun = -Infinity;
  let pending: A | null = null;
  let scheduled = false;

  const flush = (): void => {
    scheduled = false;
    if (pending !== null) {
      const args = pending;
      pending = null;
      lastRun = clock();
      fn(...args);
    }
  };

  return (...args: A): void => {
    const now = clock();
    if (now - lastRun >= intervalMs && !scheduled) {
      lastRun = now;
      fn(...args);
      return;
    }
    pending = args;
    if (!scheduled) {
      scheduled = true;
      schedule(flush, Math.max(0, intervalMs - (now - lastRun)));
    }
  };
}

/** Evenly spaced t values covering one period, used to prefetch a batch
 * of orbit frames per configuration. */
export function tGrid(frames: number, offset = 0): number[] {
  if (frames < 1) {
    throw new Error("frames must be >= 1");
  }
  const grid: number[] = [];
  for (let i = 0; i < frames; i++) {
    grid.push(offset + (2 * Math.PI * i) / frames);
  }
  return grid;
}

/** Index of the precomputed frame nearest to a scrub position. */
export function nearestFrame(t: number, frames: number): number {
  const period = 2 * Math.PI;
  const wrapped = ((t % period) + period) % period;
  return Math.round((wrapped / period) * frames) % frames;
}

/**
 * Fixed-rate animation driver. The tick callback receives the current
 * t; time-based stepping keeps the period independent of frame rate.
 */
export class Animator {
  private running = false;
  private lastTick = 0;

  constructor(
    private readonly onFrame: (t: number) => void,
    private readonly secondsPerPeriod = 8,
    private readonly clock: Clock = () => performance.now(),
  ) {}

  private t = 0;

  get isRunning(): boolean {
    return this.running;
  }

  start(raf: (cb: () => void) => void): void {
    if (this.running) {
      return;
    }
    this.running = true;
    this.lastTick = this.clock();
    const step = (): void => {
      if (!this.running) {
        return;
      }
      const now = this.clock();
      const dt = (now - this.lastTick) / 1000;
      this.lastTick = now;
      this.t = (this.t + (2 * Math.PI * dt) / this.secondsPerPeriod) % (2 * Math.PI);
      this.onFrame(this.t);
      raf(step);
    };
    raf(step);
  }

  stop(): void {
    this.running = false;
  }

  seek(t: number): void {
    this.t = t;
  }
}
