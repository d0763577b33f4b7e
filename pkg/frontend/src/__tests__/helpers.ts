import type { BtNodeSnapshot, TelemetryFrame } from "../types.js";

export function makeFrame(overrides: Partial<TelemetryFrame> = {}): TelemetryFrame {
  return {
    v: 1,
    seq: 0,
    sim_time: 0,
    vehicle: {
      position: [0, 0, 0],
      velocity: [0, 0, 0],
      battery_fraction: 1.0,
      armed: false,
      mode: "manual",
      on_ground: true,
    },
    fsm_state: "Idle",
    bt_snapshot: [],
    recent_events: [],
    landing_sites: [],
    lifecycle: "idle",
    speed: 1,
    staged_plan: null,
    ...overrides,
  };
}

export function missionSnapshot(): BtNodeSnapshot[] {
  return [
    { id: "n0", kind: "Sequence", label: "Sequence", depth: 0, status: "Running" },
    { id: "n1", kind: "Sequence", label: "Sequence", depth: 1, status: "Running" },
    { id: "n2", kind: "Action", label: "GoToWaypoint", depth: 2, status: "Running" },
    { id: "n3", kind: "Action", label: "ScienceTask", depth: 2, status: "Idle" },
  ];
}

export type FetchCall = { path: string; body: unknown };

/** Minimal fetch double returning queued or computed responses. */
export function fakeFetch(
  handler: (path: string, body: unknown) => { status: number; body: unknown },
): { fn: typeof fetch; calls: FetchCall[] } {
  const calls: FetchCall[] = [];
  const fn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const path = String(input).replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    calls.push({ path, body });
    const result = handler(path, body);
    return {
      ok: result.status >= 200 && result.status < 300,
      status: result.status,
      json: async () => result.body,
    } as Response;
  }) as typeof fetch;
  return { fn, calls };
}
