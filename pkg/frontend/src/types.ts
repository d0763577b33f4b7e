// Wire types for the ground-control service (all payloads carry v: 1).

export interface VehicleSnapshot {
  position: [number, number, number];
  velocity: [number, number, number];
  battery_fraction: number;
  armed: boolean;
  mode: string;
  on_ground: boolean;
}

export interface BtNodeSnapshot {
  id: string;
  kind: string;
  label: string;
  depth: number;
  status: "Idle" | "Running" | "Success" | "Failure";
}

export interface RecentEvent {
  t: number;
  name: string;
  source: string;
}

export interface LandingSiteSnapshot {
  position: [number, number, number];
  confidence: number;
  radius: number;
  detected_at: number;
}

export interface PlanWaypoint {
  id: string;
  position: [number, number, number];
  speed?: number;
  tasks?: { kind: string; params: Record<string, unknown> }[];
}

export interface PlanDoc {
  version: string;
  frame: string;
  cruise_altitude: number;
  waypoints: PlanWaypoint[];
}

export interface TelemetryFrame {
  v: number;
  seq: number;
  sim_time: number;
  vehicle: VehicleSnapshot;
  fsm_state: string;
  bt_snapshot: BtNodeSnapshot[];
  recent_events: RecentEvent[];
  landing_sites: LandingSiteSnapshot[];
  lifecycle?: string;
  speed?: number;
  staged_plan?: PlanDoc | null;
}

export interface EventAck {
  v: number;
  accepted: boolean;
  enqueued_at: number;
  advisory?: string;
}

export interface SimAck {
  v: number;
  ok: boolean;
  lifecycle: string;
  speed: number;
}

export interface PlanAck {
  v: number;
  ok: boolean;
  waypoints: number;
  path_length_m: number;
}

export interface ServiceErrorBody {
  v: number;
  error: string;
  detail?: string;
  path?: string;
}

export const MISSION_STATES = [
  "Idle", "Init", "PreChecks", "Takeoff", "Mission", "Land",
  "EmergencyLand", "Terminate",
] as const;

export const HEALTH_EVENTS = [
  "StateEstimatorFailure", "BatteryLow", "BatteryCritical",
  "EmergencyBattery", "NoLandingSitesFound", "LandingSiteChecks",
] as const;

// Events that end or endanger the flight get a confirm step in the UI.
export const DESTRUCTIVE_EVENTS: ReadonlySet<string> = new Set([
  "BatteryCritical", "EmergencyBattery", "StateEstimatorFailure",
]);
