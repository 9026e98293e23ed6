import init, { cornerCurve, cornerPasses, WedgeDemo } from "../pkg/wedgewave_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

// Draws (x, y) series on linear axes; each series is {x, y, colour}.
function plot(canvas, series, { logX = false } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, w, h);
  const fx = logX ? Math.log10 : (v) => v;
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (const s of series) {
    for (let i = 0; i < s.x.length; i++) {
      x0 = Math.min(x0, fx(s.x[i])); x1 = Math.max(x1, fx(s.x[i]));
      y0 = Math.min(y0, s.y[i]); y1 = Math.max(y1, s.y[i]);
    }
  }
  if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
  const sx = (v) => pad + ((fx(v) - x0) / (x1 - x0)) * (w - 2 * pad);
  const sy = (v) => h - pad - ((v - y0) / (y1 - y0)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText((logX ? "log₁₀ " : "") + x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 14);
  for (const s of series) {
    ctx.strokeStyle = s.colour;
    ctx.beginPath();
    for (let i = 0; i < s.x.length; i++) {
      const [px, py] = [sx(s.x[i]), sy(s.y[i])];
      i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
    }
    ctx.stroke();
  }
}

function guard(out, f) {
  out.classList.remove("err");
  try {
    f();
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
  }
}

function runCorner() {
  guard($("c-out"), () => {
    const [alpha, s] = [num("c-alpha"), num("c-s")];
    const flat = cornerCurve(alpha, s, 10, 801);
    const x = [], y = [];
    for (let i = 0; i < flat.length; i += 2) { x.push(flat[i]); y.push(flat[i + 1]); }
    plot($("c-plot"), [{ x, y, colour: "#1f5fa8" }]);
    $("c-out").textContent =
      `min |M0| on τ ∈ [-10, 10] = ${Math.min(...y).toPrecision(6)}; ` +
      `condition ${cornerPasses(alpha, s) ? "holds" : "fails"} on τ ∈ [-50, 50]`;
  });
}

let demo = null;

function runDtn() {
  guard($("d-out"), () => {
    const t = performance.now();
    demo?.free();
    demo = new WedgeDemo(num("d-alpha"), 0.05, 20, num("d-nr"), num("d-nt"));
    const ms = performance.now() - t;
    const r = demo.radii();
    const f = Array.from(r, (v) => Math.exp(-(((v - num("d-center")) / num("d-width")) ** 2)));
    const g = demo.applyBump(num("d-center"), num("d-width"));
    plot($("d-plot"), [
      { x: r, y: f, colour: "#888" },
      { x: r, y: g, colour: "#c0392b" },
    ], { logX: true });
    const eig = demo.eigenvalues();
    plot($("d-spec"), [{ x: eig.map((_, k) => k + 1), y: eig.map((v) => Math.log10(Math.max(v, 1e-12))), colour: "#27ae60" }]);
    $("d-out").textContent =
      `assembled ${r.length}x${num("d-nt")} in ${ms.toFixed(0)} ms; ` +
      `asymmetry ${demo.asymmetry().toExponential(2)}; ` +
      `λ ∈ [${eig[0].toExponential(3)}, ${eig[eig.length - 1].toExponential(3)}]\n` +
      "grey: bump f, red: Λf (log r axis); green: log₁₀ λ_k";
  });
}

function runEvolution() {
  guard($("e-out"), () => {
    if (!demo) runDtn();
    const frames = 9;
    const T = num("e-t");
    const eta = demo.evolve(num("d-center"), num("d-width"), num("e-amp"), T, frames);
    const r = demo.radii();
    const n = r.length;
    const series = [];
    for (let m = 0; m < frames; m++) {
      const hue = 240 * (1 - m / (frames - 1));
      series.push({ x: r, y: eta.subarray(m * n, (m + 1) * n), colour: `hsl(${hue},70%,45%)` });
    }
    plot($("e-plot"), series, { logX: true });
    $("e-out").textContent = `η at ${frames} times from 0 (blue) to ${T} (red), on the operator above`;
  });
}

await init();
$("c-run").onclick = runCorner;
$("d-run").onclick = runDtn;
$("e-run").onclick = runEvolution;
runCorner();
