// DOM bootstrap: the only module that touches document/window.

import { ApiClient, ApiRequestError } from "./api.js";
import { AuditController, auditFormHtml } from "./audit.js";
import { ReaderController, type ReaderState } from "./reader.js";
import type { Rating, ScaffoldedSentence } from "./types.js";

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderReader(state: ReaderState): void {
  el("sentence-host").innerHTML = state.html;
  (el<HTMLButtonElement>("btn-prev")).disabled = state.atStart;
  (el<HTMLButtonElement>("btn-next")).disabled = state.atEnd;
  el("retry-banner").hidden = !state.connectionLost;
  if (state.session) {
    window.location.hash = `session=${state.session.id}`;
  }
}

const reader = new ReaderController(api, renderReader);

async function startFromInput(): Promise<void> {
  const text = el<HTMLTextAreaElement>("text-input").value;
  const language = el<HTMLSelectElement>("lang-select").value || undefined;
  try {
    await reader.start(text, language);
    el("reader-panel").hidden = false;
  } catch (error) {
    el("start-error").textContent =
      error instanceof ApiRequestError ? error.message : "service unreachable";
  }
}

async function resumeFromHash(): Promise<boolean> {
  const match = window.location.hash.match(/session=([0-9a-f]+)/);
  if (!match) return false;
  try {
    await reader.resume(match[1] as string);
    el("reader-panel").hidden = false;
    return true;
  } catch {
    return false;
  }
}

let audit: AuditController | null = null;

async function startAudit(): Promise<void> {
  const state = reader.current;
  if (!state.session) return;
  const reviewer = el<HTMLInputElement>("reviewer-input").value;
  const sentences: ScaffoldedSentence[] = [];
  for (let i = 0; i < state.total; i += 1) {
    const response = await api.getSentence(state.session.id, i);
    sentences.push(response.sentence);
  }
  audit = new AuditController(api, reviewer, state.session.language, sentences);
  renderAudit();
}

function renderAudit(): void {
  if (!audit) return;
  const host = el("audit-host");
  host.innerHTML = auditFormHtml(audit);
  host.querySelectorAll<HTMLInputElement>("input[type=radio]").forEach((input) => {
    input.addEventListener("change", () => {
      const index = Number(input.name.replace("item", ""));
      const item = audit!.items[index];
      if (item) audit!.rate(item, input.value as Rating);
      renderAudit();
    });
  });
  host.querySelector("form")?.addEventListener("submit", async (event) => {
    event.preventDefault();
    try {
      await audit!.submit();
    } catch {
      // lastError is set; draft ratings preserved
    }
    renderAudit();
  });
}

window.addEventListener("DOMContentLoaded", async () => {
  el("btn-start").addEventListener("click", () => void startFromInput());
  el("btn-prev").addEventListener("click", () => void reader.previous());
  el("btn-next").addEventListener("click", () => void reader.next());
  el("btn-retry").addEventListener("click", () => void reader.retry());
  el<HTMLInputElement>("toggle-keywords").addEventListener("change", (event) => {
    void reader.toggle("show_keywords", (event.target as HTMLInputElement).checked);
  });
  el<HTMLInputElement>("toggle-pictograms").addEventListener("change", (event) => {
    void reader.toggle("show_pictograms", (event.target as HTMLInputElement).checked);
  });
  el("btn-audit").addEventListener("click", () => void startAudit());
  await resumeFromHash();
});
