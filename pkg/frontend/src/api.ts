// Thin HTTP client over the documented service endpoints. Every user
// action in the console maps to exactly one of these calls.

import type { EventAck, PlanAck, ServiceErrorBody, SimAck, TelemetryFrame } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ServiceErrorBody,
  ) {
    super(`${body.error}: ${body.detail ?? ""}`);
  }
}

export class GcsApi {
  constructor(
    private base: string = "",
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body as ServiceErrorBody);
    }
    return body as T;
  }

  uploadPlan(planText: string): Promise<PlanAck> {
    return this.request<PlanAck>("/plan", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: planText,
    });
  }

  postEvent(name: string): Promise<EventAck> {
    return this.request<EventAck>("/event", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ v: 1, name }),
    });
  }

  simControl(cmd: string, arg?: number): Promise<SimAck> {
    return this.request<SimAck>("/sim", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(arg === undefined ? { v: 1, cmd } : { v: 1, cmd, arg }),
    });
  }

  getState(): Promise<TelemetryFrame> {
    return this.request<TelemetryFrame>("/state");
  }
}
