// Active behavior tree, rendered from the frame's depth-first snapshot.
// Depth gives the indentation, status gives the color; a Running node
// gets a spinner dot.

import type { ConsoleStore } from "../store.js";

const STATUS_CLASS: Record<string, string> = {
  Idle: "bt-idle",
  Running: "bt-running",
  Success: "bt-success",
  Failure: "bt-failure",
};

export class BtPanel {
  private list: HTMLElement;

  constructor(root: HTMLElement, private store: ConsoleStore) {
    this.list = document.createElement("div");
    this.list.classList.add("bt-tree");
    root.appendChild(this.list);
    store.subscribe(() => this.render());
  }

  render(): void {
    const snapshot = this.store.frame?.bt_snapshot ?? [];
    this.list.textContent = "";
    if (!snapshot.length) {
      const empty = document.createElement("div");
      empty.classList.add("bt-empty");
      empty.textContent = "no active tree";
      this.list.appendChild(empty);
      return;
    }
    for (const node of snapshot) {
      const row = document.createElement("div");
      row.classList.add("bt-row", STATUS_CLASS[node.status] ?? "bt-idle");
      row.style.paddingLeft = `${node.depth * 16 + 4}px`;
      row.dataset.nodeId = node.id;

      const dot = document.createElement("span");
      dot.classList.add("bt-dot");
      if (node.status === "Running") dot.classList.add("spinner");

      const label = document.createElement("span");
      label.classList.add("bt-label");
      label.textContent = node.kind === "Action" || node.kind === "Condition"
        ? node.label
        : node.kind;

      row.appendChild(dot);
      row.appendChild(label);
      this.list.appendChild(row);
    }
  }
}
