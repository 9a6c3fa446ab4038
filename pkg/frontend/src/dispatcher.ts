// Debounced, latest-wins query dispatch.
//
// Input events are coalesced: at most one request fires per quiet period.
// Every dispatch gets a sequence number; responses arriving for anything
// older than the newest dispatched query are dropped, so a slow response
// for "fam" can never overwrite the results for "family".

import { ApiClient, RankRequest, RankResponse } from "./api.js";

export interface DispatcherOptions {
  debounceMs?: number;
  limit?: number;
  onResult: (response: RankResponse, request: RankRequest) => void;
  onError: (error: unknown) => void;
}

export class QueryDispatcher {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private latestDispatched = 0;
  private latestDelivered = 0;
  private readonly debounceMs: number;

  constructor(
    private client: ApiClient,
    private options: DispatcherOptions,
  ) {
    this.debounceMs = options.debounceMs ?? 200;
  }

  /** Called on every input event; the request fires after quiescence. */
  input(query: string, entityProperties?: string[]): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.dispatch(query, entityProperties);
    }, this.debounceMs);
  }

  /** Immediate dispatch (used for retry-on-user-action). */
  async dispatch(query: string, entityProperties?: string[]): Promise<void> {
    const seq = ++this.latestDispatched;
    const request: RankRequest = { query, limit: this.options.limit ?? 10 };
    if (entityProperties && entityProperties.length > 0) {
      request.entity_properties = entityProperties;
    }
    try {
      const response = await this.client.rank(request);
      if (seq <= this.latestDelivered || seq < this.latestDispatched) {
        return; // stale: a newer query has already been dispatched/delivered
      }
      this.latestDelivered = seq;
      this.options.onResult(response, request);
    } catch (error) {
      if (seq < this.latestDispatched) {
        return;
      }
      this.options.onError(error);
    }
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
