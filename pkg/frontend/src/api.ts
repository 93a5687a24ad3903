/** Typed client for the billiardlab HTTP API.
 *
 * All geometry and numbers shown in the UI come from these endpoints;
 * the client never computes geometry itself. Overlapping requests are
 * resolved by monotonically stamped fetches: responses that arrive for
 * a stamp older than the latest issued one are dropped.
 */

import type {
  CatalogEntry,
  FamilyResponse,
  InvariantsResponse,
  OrbitResponse,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function query(params: Record<string, string | number | undefined>): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) {
      parts.push(`${encodeURIComponent(key)}=${encodeURIComponent(String(value))}`);
    }
  }
  return parts.join("&");
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) {
      const body = (await response.json().catch(() => ({}))) as {
        detail?: string;
      };
      throw new ApiError(response.status, body.detail ?? `HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  family(a: number, b: number, n: number): Promise<FamilyResponse> {
    return this.get(`/api/family?${query({ a, b, n })}`);
  }

  orbit(
    a: number,
    b: number,
    n: number,
    t: number,
    layers: string,
  ): Promise<OrbitResponse> {
    return this.get(`/api/orbit?${query({ a, b, n, t, layers })}`);
  }

  invariants(
    a: number,
    b: number,
    n: number,
    samples: number,
    anchor?: string,
  ): Promise<InvariantsResponse> {
    return this.get(`/api/invariants?${query({ a, b, n, samples, anchor })}`);
  }

  catalog(): Promise<CatalogEntry[]> {
    return this.get("/api/catalog");
  }
}

/**
 * Wraps an async producer so that only the most recently issued call
 * may deliver its result; earlier in-flight calls resolve to null.
 */
export class LatestOnly<A extends unknown[], R> {
  private stamp = 0;

  constructor(private readonly producer: (...args: A) => Promise<R>) {}

  async call(...args: A): Promise<R | null> {
    const mine = ++this.stamp;
    const result = await this.producer(...args);
    return mine === this.stamp ? result : null;
  }
}
