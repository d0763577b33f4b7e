// Health event injection: one button per known event plus a custom name
// field. Destructive events take two clicks (arm, then confirm); clicking
// anything else disarms the pending confirmation.

import { DESTRUCTIVE_EVENTS, HEALTH_EVENTS } from "../types.js";
import type { GcsApi } from "../api.js";
import { ApiError } from "../api.js";
import type { ConsoleStore } from "../store.js";
import { formatSimTime } from "../format.js";

export class EventPanel {
  pendingConfirm: string | null = null;
  private buttons = new Map<string, HTMLButtonElement>();
  private historyList: HTMLElement;
  private customInput: HTMLInputElement;

  constructor(
    root: HTMLElement,
    private store: ConsoleStore,
    private api: GcsApi,
  ) {
    const grid = document.createElement("div");
    grid.classList.add("event-grid");
    for (const name of HEALTH_EVENTS) {
      const button = document.createElement("button");
      button.textContent = name;
      button.dataset.event = name;
      if (DESTRUCTIVE_EVENTS.has(name)) button.classList.add("destructive");
      button.addEventListener("click", () => void this.clickEvent(name));
      this.buttons.set(name, button);
      grid.appendChild(button);
    }
    root.appendChild(grid);

    const customRow = document.createElement("div");
    customRow.classList.add("event-custom");
    this.customInput = document.createElement("input");
    this.customInput.placeholder = "custom event name";
    const send = document.createElement("button");
    send.textContent = "inject";
    send.addEventListener("click", () => {
      const name = this.customInput.value.trim();
      if (name) void this.clickEvent(name);
    });
    customRow.appendChild(this.customInput);
    customRow.appendChild(send);
    root.appendChild(customRow);

    this.historyList = document.createElement("ul");
    this.historyList.classList.add("event-history");
    root.appendChild(this.historyList);
    store.subscribe(() => this.renderHistory());
  }

  /** Returns true when the event was actually posted. */
  async clickEvent(name: string): Promise<boolean> {
    if (DESTRUCTIVE_EVENTS.has(name) && this.pendingConfirm !== name) {
      this.setPending(name);
      return false;
    }
    this.setPending(null);
    try {
      const ack = await this.api.postEvent(name);
      this.store.recordEvent({
        name,
        simTime: ack.enqueued_at,
        accepted: ack.accepted,
        advisory: ack.advisory,
      });
      return true;
    } catch (error) {
      const detail = error instanceof ApiError ? error.body.detail : String(error);
      this.store.recordEvent({
        name, simTime: this.store.frame?.sim_time ?? 0,
        accepted: false, note: detail,
      });
      return false;
    }
  }

  private setPending(name: string | null): void {
    this.pendingConfirm = name;
    for (const [event, button] of this.buttons) {
      button.textContent = event === name ? `confirm ${event}?` : event;
      button.classList.toggle("pending", event === name);
    }
  }

  private renderHistory(): void {
    this.historyList.textContent = "";
    for (const entry of this.store.history) {
      const item = document.createElement("li");
      let text = `[${formatSimTime(entry.simTime)}] ${entry.name}`;
      if (!entry.accepted) text += " (rejected)";
      item.textContent = text;
      if (entry.advisory) {
        const badge = document.createElement("span");
        badge.classList.add("advisory-badge");
        badge.textContent = "unmapped event";
        badge.title = entry.advisory;
        item.appendChild(badge);
      }
      if (entry.note) {
        const note = document.createElement("span");
        note.classList.add("event-note");
        note.textContent = ` ${entry.note}`;
        item.appendChild(note);
      }
      this.historyList.appendChild(item);
    }
  }
}
