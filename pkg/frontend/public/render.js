// DOM rendering for the ranked result list.
//
// Results are rendered strictly in server order; the UI never reorders,
// filters, or rescores them.  Semantic rows show the cosine score,
// exact-tier rows show a badge instead.
const TIER_BADGES = {
    label_exact: "label",
    alias_exact: "alias",
    semantic: "semantic",
};
export function formatScore(score) {
    return score.toFixed(3);
}
function resultRow(doc, result) {
    const row = doc.createElement("li");
    row.className = `result-row tier-${result.tier}`;
    row.dataset.propertyId = result.property_id;
    const rank = doc.createElement("span");
    rank.className = "rank";
    rank.textContent = String(result.rank);
    const badge = doc.createElement("span");
    badge.className = `badge badge-${result.tier}`;
    badge.textContent = TIER_BADGES[result.tier];
    const label = doc.createElement("span");
    label.className = "label";
    label.textContent = result.label;
    const id = doc.createElement("span");
    id.className = "property-id";
    id.textContent = result.property_id;
    const score = doc.createElement("span");
    score.className = "score";
    score.textContent = formatScore(result.score);
    row.append(rank, badge, label, id, score);
    return row;
}
export function renderResults(container, response) {
    const doc = container.ownerDocument;
    container.replaceChildren();
    if (response.results.length === 0) {
        const empty = doc.createElement("p");
        empty.className = "empty-state";
        empty.textContent =
            response.reason === "empty_query"
                ? "Type a query to search properties."
                : "No matching properties.";
        container.append(empty);
        return;
    }
    const list = doc.createElement("ol");
    list.className = "result-list";
    for (const result of response.results) {
        list.append(resultRow(doc, result));
    }
    container.append(list);
}
export function renderError(banner, message) {
    banner.textContent = message;
    banner.hidden = false;
}
export function clearError(banner) {
    banner.textContent = "";
    banner.hidden = true;
}
