// Console session state. Everything rendered comes from telemetry frames
// received from the service; the store only derives presentation facts
// (last transition, trajectory trace, event history) and notifies
// subscribers. No autonomy logic lives on the client.

import type { ConnectionState } from "./ws.js";
import type { TelemetryFrame } from "./types.js";

export interface TransitionMark {
  from: string;
  to: string;
  atSeq: number;
}

export interface HistoryEntry {
  name: string;
  simTime: number;
  accepted: boolean;
  advisory?: string;
  note?: string;
}

const HISTORY_LIMIT = 50;
const TRAJECTORY_LIMIT = 2000;

export class ConsoleStore {
  frame: TelemetryFrame | null = null;
  connection: ConnectionState = "connecting";
  lastTransition: TransitionMark | null = null;
  history: HistoryEntry[] = [];
  trajectory: [number, number][] = [];
  stagedPlanName: string | null = null;
  framesApplied = 0;

  private listeners: (() => void)[] = [];

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  applyFrame(frame: TelemetryFrame): void {
    const previous = this.frame;
    if (previous && previous.fsm_state !== frame.fsm_state) {
      this.lastTransition = {
        from: previous.fsm_state,
        to: frame.fsm_state,
        atSeq: this.framesApplied,
      };
    }
    const [x, y] = frame.vehicle.position;
    const last = this.trajectory[this.trajectory.length - 1];
    if (!last || last[0] !== x || last[1] !== y) {
      this.trajectory.push([x, y]);
      if (this.trajectory.length > TRAJECTORY_LIMIT) {
        this.trajectory.shift();
      }
    }
    this.frame = frame;
    this.framesApplied += 1;
    this.notify();
  }

  setConnection(state: ConnectionState): void {
    this.connection = state;
    this.notify();
  }

  recordEvent(entry: HistoryEntry): void {
    this.history.unshift(entry);
    if (this.history.length > HISTORY_LIMIT) {
      this.history.pop();
    }
    this.notify();
  }

  setStagedPlan(name: string | null): void {
    this.stagedPlanName = name;
    this.notify();
  }

  resetTrajectory(): void {
    this.trajectory = [];
    this.notify();
  }

  get lifecycle(): string {
    return this.frame?.lifecycle ?? "idle";
  }

  /** Frames applied since the given mark; used to check highlight latency. */
  framesSince(seq: number): number {
    return this.framesApplied - seq;
  }
}
