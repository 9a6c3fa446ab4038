// Typed client for the /v1 ranking service.
export class ApiError extends Error {
    constructor(message, status) {
        super(message);
        this.status = status;
        this.name = "ApiError";
    }
}
export class ApiClient {
    constructor(baseUrl, fetchFn = fetch) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async rank(request) {
        const resp = await this.fetchFn(`${this.baseUrl}/v1/rank`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(request),
        });
        if (!resp.ok) {
            throw new ApiError(`rank request failed (${resp.status})`, resp.status);
        }
        return (await resp.json());
    }
    async property(id) {
        const resp = await this.fetchFn(`${this.baseUrl}/v1/properties/${id}`);
        if (!resp.ok) {
            throw new ApiError(`property lookup failed (${resp.status})`, resp.status);
        }
        return (await resp.json());
    }
}
// Entity scopes come from a static JSON file (entity id -> property ids),
// so the demo works fully offline against local snapshots.
export async function loadEntityMap(url, fetchFn = fetch) {
    const resp = await fetchFn(url);
    if (!resp.ok) {
        throw new ApiError(`entity map fetch failed (${resp.status})`, resp.status);
    }
    return (await resp.json());
}
