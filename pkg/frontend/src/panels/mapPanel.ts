// 2-D mission map: plan waypoints, the flown track and detected landing
// sites with confidence labels, auto-fitted to the mission extent.

import { formatConfidence } from "../format.js";
import type { ConsoleStore } from "../store.js";

export class MapPanel {
  private canvas: HTMLCanvasElement;

  constructor(root: HTMLElement, private store: ConsoleStore) {
    this.canvas = document.createElement("canvas");
    this.canvas.width = 420;
    this.canvas.height = 320;
    this.canvas.classList.add("map-canvas");
    root.appendChild(this.canvas);
    store.subscribe(() => this.render());
  }

  private bounds(): { minX: number; maxX: number; minY: number; maxY: number } {
    const xs: number[] = [0];
    const ys: number[] = [0];
    const plan = this.store.frame?.staged_plan;
    for (const wp of plan?.waypoints ?? []) {
      xs.push(wp.position[0]);
      ys.push(wp.position[1]);
    }
    for (const [x, y] of this.store.trajectory) {
      xs.push(x);
      ys.push(y);
    }
    for (const site of this.store.frame?.landing_sites ?? []) {
      xs.push(site.position[0]);
      ys.push(site.position[1]);
    }
    const pad = 10;
    return {
      minX: Math.min(...xs) - pad, maxX: Math.max(...xs) + pad,
      minY: Math.min(...ys) - pad, maxY: Math.max(...ys) + pad,
    };
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;   // happy-dom has no 2d context; fine for tests
    const { width, height } = this.canvas;
    const b = this.bounds();
    const scale = Math.min(width / (b.maxX - b.minX), height / (b.maxY - b.minY));
    const toPx = (x: number, y: number): [number, number] => [
      (x - b.minX) * scale,
      height - (y - b.minY) * scale,
    ];

    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#10151c";
    ctx.fillRect(0, 0, width, height);

    // Plan polyline and waypoints.
    const plan = this.store.frame?.staged_plan;
    if (plan?.waypoints.length) {
      ctx.strokeStyle = "#6b7a8f";
      ctx.setLineDash([4, 4]);
      ctx.beginPath();
      plan.waypoints.forEach((wp, i) => {
        const [px, py] = toPx(wp.position[0], wp.position[1]);
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
      ctx.setLineDash([]);
      for (const wp of plan.waypoints) {
        const [px, py] = toPx(wp.position[0], wp.position[1]);
        ctx.fillStyle = "#e8c547";
        ctx.beginPath();
        ctx.arc(px, py, 4, 0, Math.PI * 2);
        ctx.fill();
      }
    }

    // Flown track.
    if (this.store.trajectory.length > 1) {
      ctx.strokeStyle = "#58a6ff";
      ctx.beginPath();
      this.store.trajectory.forEach(([x, y], i) => {
        const [px, py] = toPx(x, y);
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
    }

    // Landing sites with confidence labels.
    for (const site of this.store.frame?.landing_sites ?? []) {
      const [px, py] = toPx(site.position[0], site.position[1]);
      ctx.strokeStyle = "#3fb950";
      ctx.beginPath();
      ctx.arc(px, py, Math.max(3, site.radius * scale), 0, Math.PI * 2);
      ctx.stroke();
      ctx.fillStyle = "#3fb950";
      ctx.font = "10px monospace";
      ctx.fillText(formatConfidence(site.confidence), px + 6, py - 6);
    }

    // Vehicle.
    const vehicle = this.store.frame?.vehicle;
    if (vehicle) {
      const [px, py] = toPx(vehicle.position[0], vehicle.position[1]);
      ctx.fillStyle = vehicle.armed ? "#ff7b72" : "#8b949e";
      ctx.beginPath();
      ctx.arc(px, py, 5, 0, Math.PI * 2);
      ctx.fill();
    }
  }
}
