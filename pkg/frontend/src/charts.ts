/** Hand-rolled SVG charts: a gain curve with the optimum marked, and the
 * standardized one-more-value curve with the search's current score marked.
 *
 * The one-more curve is illustrative only (drawn with a coarse local erf
 * approximation); the marked point and every verdict shown anywhere in the
 * UI come from the service.
 */

const WIDTH = 420;
const HEIGHT = 220;
const PAD = 34;

function scale(values: number[], lo: number, hi: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const span = max - min || 1;
  return (v) => lo + ((v - min) / span) * (hi - lo);
}

function polyline(xs: number[], ys: number[]): string {
  return xs.map((x, i) => `${x.toFixed(1)},${ys[i]!.toFixed(1)}`).join(" ");
}

export function gainCurveSvg(curve: [number, number][], nStar: number | null): string {
  if (curve.length === 0) return "";
  const ns = curve.map(([n]) => n);
  const gains = curve.map(([, g]) => g);
  const sx = scale(ns, PAD, WIDTH - 10);
  const sy = scale(gains, HEIGHT - PAD, 12);
  const line = polyline(ns.map(sx), gains.map(sy));
  let marker = "";
  if (nStar !== null) {
    const point = curve.find(([n]) => n === nStar);
    if (point) {
      marker =
        `<circle cx="${sx(point[0]).toFixed(1)}" cy="${sy(point[1]).toFixed(1)}" r="5" class="marker"/>` +
        `<text x="${sx(point[0]).toFixed(1)}" y="${(sy(point[1]) - 10).toFixed(1)}" class="label">n*=${nStar}</text>`;
    }
  }
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<polyline points="${line}" class="curve"/>` +
    marker +
    `<text x="${PAD}" y="${HEIGHT - 8}" class="axis">n (items sampled)</text>` +
    `<text x="6" y="14" class="axis">expected gain</text>` +
    `</svg>`
  );
}

/** Coarse normal cdf for the illustrative curve only (A&S 7.1.26 erf). */
function roughCdf(x: number): number {
  const t = 1 / (1 + 0.3275911 * Math.abs(x) / Math.SQRT2);
  const erf =
    1 -
    (((((1.061405429 * t - 1.453152027) * t) + 1.421413741) * t - 0.284496736) * t + 0.254829592) *
      t *
      Math.exp((-x * x) / 2);
  return x >= 0 ? 0.5 * (1 + erf) : 0.5 * (1 - erf);
}

function roughOneMoreScore(z: number): number {
  const pdf = Math.exp((-z * z) / 2) / Math.sqrt(2 * Math.PI);
  return pdf + z * (roughCdf(z) - 1);
}

export function oneMoreCurveSvg(z0: number | null, vPlus: number | null): string {
  const zs: number[] = [];
  const vs: number[] = [];
  for (let z = -3; z <= 3.0001; z += 0.1) {
    zs.push(z);
    vs.push(roughOneMoreScore(z));
  }
  const sx = scale(zs, PAD, WIDTH - 10);
  const sy = scale(vs, HEIGHT - PAD, 12);
  let marker = "";
  if (z0 !== null && vPlus !== null && z0 >= -3 && z0 <= 3) {
    marker =
      `<circle cx="${sx(z0).toFixed(1)}" cy="${sy(vPlus).toFixed(1)}" r="5" class="marker"/>` +
      `<text x="${sx(z0).toFixed(1)}" y="${(sy(vPlus) - 10).toFixed(1)}" class="label">your z</text>`;
  }
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<polyline points="${polyline(zs.map(sx), vs.map(sy))}" class="curve"/>` +
    marker +
    `<text x="${PAD}" y="${HEIGHT - 8}" class="axis">best-so-far standard score z</text>` +
    `<text x="6" y="14" class="axis">one-more value (standardized)</text>` +
    `</svg>`
  );
}
