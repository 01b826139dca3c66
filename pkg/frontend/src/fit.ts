/** Least-squares slope fitting in log-log coordinates. */

export interface SlopeFit {
  slope: number;
  intercept: number;
}

export function fitLogLogSlope(ts: number[], values: number[]): SlopeFit {
  const pairs = ts
    .map((t, i) => [t, values[i]] as const)
    .filter(([t, v]) => t > 0 && v > 0);
  if (pairs.length < 2) {
    throw new Error(`need at least 2 positive samples to fit, got ${pairs.length}`);
  }
  const xs = pairs.map(([t]) => Math.log(t));
  const ys = pairs.map(([, v]) => Math.log(v));
  const n = xs.length;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i += 1) {
    sxx += (xs[i] - mx) ** 2;
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const slope = sxy / sxx;
  return { slope, intercept: my - slope * mx };
}
