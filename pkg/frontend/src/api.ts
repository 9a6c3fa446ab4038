// Typed client for the /v1 ranking service.

export type Tier = "label_exact" | "alias_exact" | "semantic";

export interface RankResult {
  property_id: string;
  label: string;
  tier: Tier;
  score: number;
  rank: number;
}

export interface RankResponse {
  results: RankResult[];
  query_tokens: string[];
  elapsed_micros: number;
  reason?: string;
}

export interface PropertyDetail {
  id: string;
  label: string;
  aliases: string[];
  description: string | null;
  has_vector: boolean;
}

export interface RankRequest {
  query: string;
  limit?: number;
  entity_properties?: string[];
}

export class ApiError extends Error {
  constructor(message: string, public status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  async rank(request: RankRequest): Promise<RankResponse> {
    const resp = await this.fetchFn(`${this.baseUrl}/v1/rank`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!resp.ok) {
      throw new ApiError(`rank request failed (${resp.status})`, resp.status);
    }
    return (await resp.json()) as RankResponse;
  }

  async property(id: string): Promise<PropertyDetail> {
    const resp = await this.fetchFn(`${this.baseUrl}/v1/properties/${id}`);
    if (!resp.ok) {
      throw new ApiError(`property lookup failed (${resp.status})`, resp.status);
    }
    return (await resp.json()) as PropertyDetail;
  }
}

// Entity scopes come from a static JSON file (entity id -> property ids),
// so the demo works fully offline against local snapshots.
export async function loadEntityMap(
  url: string,
  fetchFn: typeof fetch = fetch,
): Promise<Record<string, string[]>> {
  const resp = await fetchFn(url);
  if (!resp.ok) {
    throw new ApiError(`entity map fetch failed (${resp.status})`, resp.status);
  }
  return (await resp.json()) as Record<string, string[]>;
}
