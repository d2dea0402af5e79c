import { App } from "./app.js";

declare global {
  interface Window {
    CODESCOUT_API?: string;
  }
}

function boot(): void {
  const mount = document.getElementById("app");
  if (mount) new App(mount, { apiBase: window.CODESCOUT_API ?? "" });
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
