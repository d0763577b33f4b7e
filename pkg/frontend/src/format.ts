// Small presentation helpers shared by the panels.

export function formatConfidence(confidence: number): string {
  return confidence.toFixed(2);
}

export function formatSimTime(seconds: number): string {
  const m = Math.floor(seconds / 60);
  const s = seconds - m * 60;
  return `${m}:${s.toFixed(1).padStart(4, "0")}`;
}

export function formatBattery(fraction: number): string {
  return `${(fraction * 100).toFixed(0)}%`;
}

export function formatPosition(p: [number, number, number]): string {
  return `(${p[0].toFixed(1)}, ${p[1].toFixed(1)}, ${p[2].toFixed(1)})`;
}
