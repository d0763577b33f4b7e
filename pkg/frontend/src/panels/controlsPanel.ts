// Mission controls: plan upload with inline field-path errors, sim
// lifecycle buttons gated by the service's lifecycle state, and the speed
// slider. Buttons mirror what the service would reject anyway.

import { ApiError, GcsApi } from "../api.js";
import type { ConsoleStore } from "../store.js";
import { formatBattery, formatSimTime } from "../format.js";

const SPEED_STOPS = [0.5, 1, 2, 5, 10, 20, 50, 100];

export class ControlsPanel {
  readonly uploadError: HTMLElement;
  readonly uploadOk: HTMLElement;
  private buttons = new Map<string, HTMLButtonElement>();
  private speedSlider: HTMLInputElement;
  private speedLabel: HTMLElement;
  private statusLine: HTMLElement;
  private fileInput: HTMLInputElement;

  constructor(
    root: HTMLElement,
    private store: ConsoleStore,
    private api: GcsApi,
  ) {
    const uploadRow = document.createElement("div");
    uploadRow.classList.add("upload-row");
    this.fileInput = document.createElement("input");
    this.fileInput.type = "file";
    this.fileInput.accept = ".json,application/json";
    this.fileInput.addEventListener("change", () => {
      const file = this.fileInput.files?.[0];
      if (file) void file.text().then((text) => this.uploadPlan(text, file.name));
    });
    uploadRow.appendChild(this.fileInput);
    this.uploadOk = document.createElement("span");
    this.uploadOk.classList.add("upload-ok");
    uploadRow.appendChild(this.uploadOk);
    root.appendChild(uploadRow);

    this.uploadError = document.createElement("div");
    this.uploadError.classList.add("upload-error");
    root.appendChild(this.uploadError);

    const buttonRow = document.createElement("div");
    buttonRow.classList.add("sim-buttons");
    for (const cmd of ["start", "pause", "resume", "reset"]) {
      const button = document.createElement("button");
      button.textContent = cmd;
      button.dataset.cmd = cmd;
      button.addEventListener("click", () => void this.simCommand(cmd));
      this.buttons.set(cmd, button);
      buttonRow.appendChild(button);
    }
    root.appendChild(buttonRow);

    const speedRow = document.createElement("div");
    speedRow.classList.add("speed-row");
    this.speedSlider = document.createElement("input");
    this.speedSlider.type = "range";
    this.speedSlider.min = "0";
    this.speedSlider.max = String(SPEED_STOPS.length - 1);
    this.speedSlider.value = "1";
    this.speedSlider.step = "1";
    this.speedSlider.addEventListener("change", () => {
      const speed = SPEED_STOPS[Number(this.speedSlider.value)];
      void this.simCommand("set_speed", speed);
    });
    this.speedLabel = document.createElement("span");
    this.speedLabel.textContent = "1x";
    speedRow.appendChild(this.speedSlider);
    speedRow.appendChild(this.speedLabel);
    root.appendChild(speedRow);

    this.statusLine = document.createElement("div");
    this.statusLine.classList.add("status-line");
    root.appendChild(this.statusLine);

    store.subscribe(() => this.render());
    this.render();
  }

  async uploadPlan(text: string, name = "plan"): Promise<boolean> {
    this.uploadError.textContent = "";
    this.uploadOk.textContent = "";
    try {
      const ack = await this.api.uploadPlan(text);
      this.store.setStagedPlan(name);
      this.uploadOk.textContent =
        `staged ${name}: ${ack.waypoints} waypoints, ${ack.path_length_m} m`;
      return true;
    } catch (error) {
      if (error instanceof ApiError) {
        const where = error.body.path ? ` at ${error.body.path}` : "";
        this.uploadError.textContent =
          `${error.body.error}${where}: ${error.body.detail ?? ""}`;
      } else {
        this.uploadError.textContent = String(error);
      }
      return false;
    }
  }

  async simCommand(cmd: string, arg?: number): Promise<void> {
    try {
      const ack = await this.api.simControl(cmd, arg);
      if (cmd === "set_speed") this.speedLabel.textContent = `${ack.speed}x`;
      if (cmd === "reset") this.store.resetTrajectory();
    } catch (error) {
      if (error instanceof ApiError) {
        this.uploadError.textContent = `${error.body.error}: ${error.body.detail ?? ""}`;
      }
    }
  }

  render(): void {
    const lifecycle = this.store.lifecycle;
    const hasPlan = this.stagedPlanAvailable();
    this.setEnabled("start", lifecycle === "idle" && hasPlan);
    this.setEnabled("pause", lifecycle === "running");
    this.setEnabled("resume", lifecycle === "paused");
    this.setEnabled("reset", lifecycle !== "idle");
    this.fileInput.disabled = lifecycle !== "idle";

    const frame = this.store.frame;
    if (frame) {
      this.statusLine.textContent =
        `t=${formatSimTime(frame.sim_time)}  battery ${formatBattery(frame.vehicle.battery_fraction)}` +
        `  ${this.store.connection === "open" ? "" : `[${this.store.connection}]`}`;
    }
  }

  private stagedPlanAvailable(): boolean {
    return this.store.stagedPlanName !== null
      || Boolean(this.store.frame?.staged_plan);
  }

  private setEnabled(cmd: string, enabled: boolean): void {
    const button = this.buttons.get(cmd);
    if (button) button.disabled = !enabled;
  }

  buttonEnabled(cmd: string): boolean {
    return !(this.buttons.get(cmd)?.disabled ?? true);
  }
}
