// Mission phase diagram: the eight states in a fixed layout, the current
// one highlighted, the most recent transition edge flashed. Pure
// presentation; state names and transitions come from telemetry frames.

import type { ConsoleStore } from "../store.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface NodeLayout {
  x: number;
  y: number;
}

// Nominal chain across the top, the emergency flow below.
const LAYOUT: Record<string, NodeLayout> = {
  Idle: { x: 60, y: 40 },
  Init: { x: 170, y: 40 },
  PreChecks: { x: 280, y: 40 },
  Takeoff: { x: 390, y: 40 },
  Mission: { x: 500, y: 40 },
  Land: { x: 610, y: 40 },
  Terminate: { x: 610, y: 150 },
  EmergencyLand: { x: 390, y: 150 },
};

// Display edges: the nominal chain plus the safety routes.
const EDGES: [string, string][] = [
  ["Idle", "Init"],
  ["Init", "PreChecks"],
  ["PreChecks", "Takeoff"],
  ["Takeoff", "Mission"],
  ["Mission", "Land"],
  ["Land", "Terminate"],
  ["Takeoff", "EmergencyLand"],
  ["Mission", "EmergencyLand"],
  ["Land", "EmergencyLand"],
  ["Init", "EmergencyLand"],
  ["EmergencyLand", "Terminate"],
  ["Takeoff", "Land"],
];

export class FsmPanel {
  private nodes = new Map<string, SVGGElement>();
  private edges = new Map<string, SVGLineElement>();

  constructor(private root: HTMLElement, private store: ConsoleStore) {
    this.build();
    store.subscribe(() => this.render());
  }

  private build(): void {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", "0 0 680 200");
    svg.classList.add("fsm-diagram");

    for (const [from, to] of EDGES) {
      const a = LAYOUT[from];
      const b = LAYOUT[to];
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(a.x));
      line.setAttribute("y1", String(a.y));
      line.setAttribute("x2", String(b.x));
      line.setAttribute("y2", String(b.y));
      line.classList.add("fsm-edge");
      this.edges.set(`${from}>${to}`, line);
      svg.appendChild(line);
    }

    for (const [name, pos] of Object.entries(LAYOUT)) {
      const group = document.createElementNS(SVG_NS, "g");
      group.classList.add("fsm-node");
      group.dataset.state = name;
      const circle = document.createElementNS(SVG_NS, "ellipse");
      circle.setAttribute("cx", String(pos.x));
      circle.setAttribute("cy", String(pos.y));
      circle.setAttribute("rx", "48");
      circle.setAttribute("ry", "22");
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(pos.x));
      label.setAttribute("y", String(pos.y + 4));
      label.setAttribute("text-anchor", "middle");
      label.textContent = name;
      group.appendChild(circle);
      group.appendChild(label);
      this.nodes.set(name, group);
      svg.appendChild(group);
    }
    this.root.appendChild(svg);
  }

  render(): void {
    const current = this.store.frame?.fsm_state;
    for (const [name, node] of this.nodes) {
      node.classList.toggle("active", name === current);
    }
    for (const line of this.edges.values()) {
      line.classList.remove("flash");
    }
    const transition = this.store.lastTransition;
    if (transition) {
      const edge = this.edges.get(`${transition.from}>${transition.to}`);
      edge?.classList.add("flash");
    }
  }

  /** For tests: the state currently highlighted, if any. */
  highlighted(): string | null {
    for (const [name, node] of this.nodes) {
      if (node.classList.contains("active")) return name;
    }
    return null;
  }
}
