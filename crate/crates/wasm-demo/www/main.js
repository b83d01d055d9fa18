import init, { graph_info, bound_curves, peel_histogram } from "./pkg/g31x_wasm_demo.js";

const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"];
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
  }
}

function showInfo() {
  const out = $("info-out");
  out.classList.remove("err");
  guard(out, () => {
    const v = JSON.parse(graph_info(num("info-n")));
    out.textContent =
      `|V| = ${v.vertices}\ndegree = ${v.degree}\n|E| = ${v.edges}\n` +
      `alpha = ${v.alpha ?? "not computed above n = 10"}`;
  });
}

function axes(ctx, w, h, pad, ymin, ymax, xlabel) {
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad / 2, w - 1.5 * pad, h - 1.5 * pad);
  ctx.fillStyle = "#444";
  ctx.fillText(ymax.toPrecision(3), 2, pad / 2 + 10);
  ctx.fillText(ymin.toPrecision(3), 2, h - pad);
  ctx.fillText(xlabel, w / 2, h - 8);
}

function plotCurves() {
  const legend = $("curve-legend");
  legend.classList.remove("err");
  guard(legend, () => {
    const data = JSON.parse(bound_curves(num("curve-n"), num("curve-pts"), num("curve-rho")));
    const canvas = $("curve-canvas");
    const ctx = canvas.getContext("2d");
    const { width: w, height: h } = canvas;
    const pad = 40;
    ctx.clearRect(0, 0, w, h);
    const all = data.series.flatMap((s) => s.values.filter((v) => v !== null));
    // clip far-negative tails so the interesting band stays visible
    const ymin = Math.max(Math.min(...all), -1);
    const ymax = Math.max(...all);
    const x = (c) => pad + c * (w - 1.5 * pad);
    const y = (v) => h - pad - ((Math.max(v, ymin) - ymin) / (ymax - ymin || 1)) * (h - 1.5 * pad);
    axes(ctx, w, h, pad, ymin, ymax, "c from 0 to 1");
    legend.innerHTML = "";
    data.series.forEach((s, k) => {
      ctx.strokeStyle = COLORS[k % COLORS.length];
      ctx.beginPath();
      let started = false;
      s.values.forEach((v, i) => {
        if (v === null) return;
        const px = x(data.c[i]);
        const py = y(v);
        started ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
        started = true;
      });
      ctx.stroke();
      const item = document.createElement("span");
      item.style.color = ctx.strokeStyle;
      item.textContent = started ? s.name : `${s.name} (needs ρ)`;
      legend.appendChild(item);
    });
  });
}

function plotPeel() {
  const summary = $("peel-summary");
  summary.classList.remove("err");
  guard(summary, () => {
    const data = JSON.parse(
      peel_histogram(num("peel-n"), num("peel-l"), num("peel-seed"), $("peel-greedy").checked),
    );
    summary.textContent =
      `r(W) = ${data.r_of_w}, edges accounted by peeling = ${data.total_cross_edges}\n` +
      data.steps
        .map((s) => `step ${s.i}: α = ${s.alpha}, cross = ${s.cross_edges}, B = ` +
          s.histogram.map(([i, c]) => `${i}:${c}`).join(" "))
        .join("\n");
    // stacked bars: one per step, segments by neighbour count
    const canvas = $("peel-canvas");
    const ctx = canvas.getContext("2d");
    const { width: w, height: h } = canvas;
    const pad = 40;
    ctx.clearRect(0, 0, w, h);
    const totals = data.steps.map((s) => s.histogram.reduce((a, [, c]) => a + c, 0));
    const top = Math.max(1, ...totals);
    axes(ctx, w, h, pad, 0, top, "step");
    const bw = (w - 1.5 * pad) / Math.max(1, data.steps.length);
    data.steps.forEach((s, k) => {
      let base = h - pad;
      for (const [i, c] of s.histogram) {
        const bh = (c / top) * (h - 1.5 * pad);
        ctx.fillStyle = COLORS[i % COLORS.length];
        ctx.fillRect(pad + k * bw + 1, base - bh, Math.max(1, bw - 2), bh);
        base -= bh;
      }
    });
  });
}

await init();
$("info-go").onclick = showInfo;
$("curve-go").onclick = plotCurves;
$("peel-go").onclick = plotPeel;
showInfo();
plotCurves();
plotPeel();
