// Console entry point: one store, one API client, one telemetry socket,
// four panels.

import { GcsApi } from "./api.js";
import { ConsoleStore } from "./store.js";
import { TelemetrySocket } from "./ws.js";
import { BtPanel } from "./panels/btPanel.js";
import { ControlsPanel } from "./panels/controlsPanel.js";
import { EventPanel } from "./panels/eventPanel.js";
import { FsmPanel } from "./panels/fsmPanel.js";
import { MapPanel } from "./panels/mapPanel.js";

function mount(): void {
  const serviceBase = (window as unknown as { AEROEXEC_SERVICE?: string })
    .AEROEXEC_SERVICE ?? "http://127.0.0.1:8642";
  const wsUrl = serviceBase.replace(/^http/, "ws") + "/telemetry";

  const store = new ConsoleStore();
  const api = new GcsApi(serviceBase);

  const byId = (id: string): HTMLElement => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing container #${id}`);
    return el;
  };

  new FsmPanel(byId("fsm-panel"), store);
  new BtPanel(byId("bt-panel"), store);
  new MapPanel(byId("map-panel"), store);
  new EventPanel(byId("event-panel"), store, api);
  new ControlsPanel(byId("controls-panel"), store, api);

  const banner = byId("connection-banner");
  store.subscribe(() => {
    banner.classList.toggle("visible", store.connection !== "open");
    banner.textContent = store.connection === "open"
      ? "" : `telemetry ${store.connection}…`;
  });

  const socket = new TelemetrySocket(wsUrl, {
    onFrame: (frame) => store.applyFrame(frame),
    onStatus: (state) => store.setConnection(state),
  });
  socket.connect();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", mount);
}
