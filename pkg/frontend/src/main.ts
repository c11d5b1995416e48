/** Bootstrap: hash router dispatching into the page modules. */

import { ApiClient } from "./api.js";
import { cancelDetailPolling, showDetailPage } from "./pages/detail.js";
import { showComparePage } from "./pages/compare.js";
import { showSearchPage } from "./pages/search.js";
import { showUploadPage } from "./pages/upload.js";
import { parseHash } from "./router.js";

const api = new ApiClient("");

function dispatch(): void {
  const root = document.getElementById("app");
  if (!root) {
    return;
  }
  cancelDetailPolling();
  const route = parseHash(window.location.hash);
  switch (route.page) {
    case "detail":
      void showDetailPage(root, api, route.id!);
      break;
    case "compare":
      void showComparePage(root, api, route.params);
      break;
    case "upload":
      showUploadPage(root, api);
      break;
    case "search":
      void showSearchPage(root, api, route.params);
      break;
  }
}

window.addEventListener("hashchange", dispatch);
window.addEventListener("DOMContentLoaded", dispatch);
