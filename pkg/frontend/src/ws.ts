// Telemetry stream client with capped-backoff auto-reconnect. The server
// coalesces to the latest frame for slow consumers, so dropping a frame
// here is never a correctness problem.

import type { TelemetryFrame } from "./types.js";

export type ConnectionState = "connecting" | "open" | "lost";

export interface SocketHooks {
  onFrame: (frame: TelemetryFrame) => void;
  onStatus?: (state: ConnectionState) => void;
}

export class TelemetrySocket {
  private ws: WebSocket | null = null;
  private reconnectDelay = 500;
  private readonly maxDelay = 10_000;
  private closed = false;

  constructor(
    private url: string,
    private hooks: SocketHooks,
    private wsFactory: (url: string) => WebSocket = (u) => new WebSocket(u),
  ) {}

  connect(): void {
    this.closed = false;
    this.open();
  }

  private open(): void {
    this.hooks.onStatus?.("connecting");
    this.ws = this.wsFactory(this.url);

    this.ws.onopen = () => {
      this.reconnectDelay = 500;
      this.hooks.onStatus?.("open");
    };

    this.ws.onmessage = (event: MessageEvent) => {
      try {
        this.hooks.onFrame(JSON.parse(event.data as string) as TelemetryFrame);
      } catch {
        // Malformed frame: skip it, the next one supersedes anyway.
      }
    };

    this.ws.onclose = () => {
      if (this.closed) return;
      this.hooks.onStatus?.("lost");
      setTimeout(() => {
        this.reconnectDelay = Math.min(this.reconnectDelay * 2, this.maxDelay);
        this.open();
      }, this.reconnectDelay);
    };

    this.ws.onerror = () => {
      this.ws?.close();
    };
  }

  close(): void {
    this.closed = true;
    this.ws?.close();
  }
}
