// Wires the search box, entity selector, and result list together.
// The service base URL is configurable via ?service=... or defaults to
// same-origin (use `propsearch serve --allow-origin` for cross-port dev).

import { ApiClient, loadEntityMap } from "./api.js";
import { QueryDispatcher } from "./dispatcher.js";
import { clearError, renderError, renderResults } from "./render.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "";

const searchBox = document.getElementById("search-box") as HTMLInputElement;
const entitySelect = document.getElementById("entity-select") as HTMLSelectElement;
const resultsPane = document.getElementById("results") as HTMLElement;
const errorBanner = document.getElementById("error-banner") as HTMLElement;
const dismissButton = document.getElementById("dismiss-error") as HTMLButtonElement;

const client = new ApiClient(baseUrl);
let entityMap: Record<string, string[]> = {};

const dispatcher = new QueryDispatcher(client, {
  debounceMs: 200,
  limit: 10,
  onResult: (response) => {
    clearError(errorBanner);
    renderResults(resultsPane, response);
  },
  onError: (error) => {
    renderError(errorBanner, `Request failed: ${String(error)}`);
  },
});

function currentScope(): string[] | undefined {
  const entity = entitySelect.value;
  return entity ? entityMap[entity] : undefined;
}

searchBox.addEventListener("input", () => {
  dispatcher.input(searchBox.value, currentScope());
});

entitySelect.addEventListener("change", () => {
  void dispatcher.dispatch(searchBox.value, currentScope());
});

dismissButton.addEventListener("click", () => clearError(errorBanner));

loadEntityMap("entity_map.json")
  .then((map) => {
    entityMap = map;
    for (const entity of Object.keys(map).sort()) {
      const option = document.createElement("option");
      option.value = entity;
      option.textContent = `${entity} (${map[entity].length} properties)`;
      entitySelect.append(option);
    }
  })
  .catch(() => {
    // no entity map hosted: full-index search still works
  });
