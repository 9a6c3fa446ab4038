// Debounced, latest-wins query dispatch.
//
// Input events are coalesced: at most one request fires per quiet period.
// Every dispatch gets a sequence number; responses arriving for anything
// older than the newest dispatched query are dropped, so a slow response
// for "fam" can never overwrite the results for "family".
export class QueryDispatcher {
    constructor(client, options) {
        this.client = client;
        this.options = options;
        this.timer = null;
        this.latestDispatched = 0;
        this.latestDelivered = 0;
        this.debounceMs = options.debounceMs ?? 200;
    }
    /** Called on every input event; the request fires after quiescence. */
    input(query, entityProperties) {
        if (this.timer !== null) {
            clearTimeout(this.timer);
        }
        this.timer = setTimeout(() => {
            this.timer = null;
            void this.dispatch(query, entityProperties);
        }, this.debounceMs);
    }
    /** Immediate dispatch (used for retry-on-user-action). */
    async dispatch(query, entityProperties) {
        const seq = ++this.latestDispatched;
        const request = { query, limit: this.options.limit ?? 10 };
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
        }
        catch (error) {
            if (seq < this.latestDispatched) {
                return;
            }
            this.options.onError(error);
        }
    }
    cancel() {
        if (this.timer !== null) {
            clearTimeout(this.timer);
            this.timer = null;
        }
    }
}
