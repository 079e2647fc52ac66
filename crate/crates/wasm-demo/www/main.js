import init, { profile, mesh, study } from './pkg/spfide_wasm.js';

const $ = (id) => document.getElementById(id);
const COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#17becf'];
const PAD = { l: 64, r: 16, t: 14, b: 36 };

function niceTicks(lo, hi, count) {
  const span = hi - lo || 1;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / count)));
  const step = [1, 2, 5, 10].map((m) => m * step0).find((s) => span / s <= count) || step0 * 10;
  const ticks = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) ticks.push(t);
  return ticks;
}

// series: [{ x, y, color, label, points, dash }]
function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext('2d');
  const W = canvas.width, H = canvas.height;
  ctx.clearRect(0, 0, W, H);
  const tx = opts.logx ? Math.log10 : (v) => v;
  const ty = opts.logy ? Math.log10 : (v) => v;
  let [x0, x1] = opts.xrange || [Infinity, -Infinity];
  let y0 = Infinity, y1 = -Infinity;
  for (const s of series) {
    s.x.forEach((xv, i) => {
      const yv = s.y[i];
      if (!Number.isFinite(ty(yv))) return;
      if (!opts.xrange) { x0 = Math.min(x0, tx(xv)); x1 = Math.max(x1, tx(xv)); }
      if (opts.xrange && (tx(xv) < x0 || tx(xv) > x1)) return;
      y0 = Math.min(y0, ty(yv)); y1 = Math.max(y1, ty(yv));
    });
  }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  const ym = 0.05 * (y1 - y0); y0 -= ym; y1 += ym;
  const px = (v) => PAD.l + (tx(v) - x0) / (x1 - x0) * (W - PAD.l - PAD.r);
  const py = (v) => H - PAD.b - (ty(v) - y0) / (y1 - y0) * (H - PAD.t - PAD.b);

  ctx.strokeStyle = '#eee'; ctx.fillStyle = '#555'; ctx.font = '11px sans-serif';
  for (const t of niceTicks(x0, x1, 8)) {
    const X = PAD.l + (t - x0) / (x1 - x0) * (W - PAD.l - PAD.r);
    ctx.beginPath(); ctx.moveTo(X, PAD.t); ctx.lineTo(X, H - PAD.b); ctx.stroke();
    ctx.fillText(opts.logx ? `1e${t.toFixed(1).replace(/\.0$/, '')}` : +t.toPrecision(3), X - 12, H - PAD.b + 14);
  }
  for (const t of niceTicks(y0, y1, 6)) {
    const Y = H - PAD.b - (t - y0) / (y1 - y0) * (H - PAD.t - PAD.b);
    ctx.beginPath(); ctx.moveTo(PAD.l, Y); ctx.lineTo(W - PAD.r, Y); ctx.stroke();
    ctx.fillText(opts.logy ? `1e${t.toFixed(1).replace(/\.0$/, '')}` : +t.toPrecision(3), 4, Y + 4);
  }
  if (opts.xlabel) ctx.fillText(opts.xlabel, W / 2, H - 6);

  ctx.save();
  ctx.beginPath(); ctx.rect(PAD.l, PAD.t, W - PAD.l - PAD.r, H - PAD.t - PAD.b); ctx.clip();
  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.setLineDash(s.dash || []);
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    s.x.forEach((xv, i) => (i ? ctx.lineTo(px(xv), py(s.y[i])) : ctx.moveTo(px(xv), py(s.y[i]))));
    ctx.stroke();
    if (s.points) s.x.forEach((xv, i) => ctx.fillRect(px(xv) - 2, py(s.y[i]) - 2, 4, 4));
  }
  ctx.restore();
  ctx.setLineDash([]);
  series.filter((s) => s.label).forEach((s, i) => {
    ctx.fillStyle = s.color;
    ctx.fillRect(W - PAD.r - 150, PAD.t + 6 + 16 * i, 12, 3);
    ctx.fillStyle = '#333';
    ctx.fillText(s.label, W - PAD.r - 132, PAD.t + 11 + 16 * i);
  });
}

function drawMesh(canvas, nodes, rho, xmax) {
  const ctx = canvas.getContext('2d');
  const W = canvas.width, H = canvas.height;
  ctx.clearRect(0, 0, W, H);
  const px = (v) => PAD.l + v / xmax * (W - PAD.l - PAD.r);
  ctx.fillStyle = '#fde9c8';
  ctx.fillRect(px(0), 8, Math.min(px(rho), W - PAD.r) - px(0), H - 26);
  ctx.strokeStyle = '#333';
  for (const x of nodes) {
    if (x > xmax) break;
    ctx.beginPath(); ctx.moveTo(px(x), 12); ctx.lineTo(px(x), H - 22); ctx.stroke();
  }
  ctx.fillStyle = '#555'; ctx.font = '11px sans-serif';
  ctx.fillText('mesh nodes (shaded: [0, ρ], N/2 fine cells)', PAD.l, H - 6);
}

function showError(el, e) {
  el.innerHTML = '';
  const span = document.createElement('span');
  span.className = 'err';
  span.textContent = String(e.message || e);
  el.appendChild(span);
}

function updateProfile() {
  const k = +$('k').value, n = +$('n').value, name = $('problem').value;
  $('kval').textContent = k;
  try {
    const p = profile(name, k, n);
    const m = mesh(k, n);
    const x = p.nodes(), y = p.y(), ex = p.exact();
    const xmax = $('zoom').checked ? Math.min(1, 3 * p.rho) : 1;
    plot($('profile'), [
      { x, y: ex, color: '#999', label: 'exact at nodes', dash: [5, 4] },
      { x, y, color: COLORS[0], label: 'fitted scheme', points: true },
    ], { xrange: [0, xmax], xlabel: 'ξ' });
    drawMesh($('mesh'), m.nodes(), m.rho, xmax);
    $('profile-stats').textContent =
      `ε = ${(2 ** -k).toExponential(4)}   ρ = ${p.rho.toExponential(4)}   ` +
      `h_fine = ${m.h_fine.toExponential(3)}   h_coarse = ${m.h_coarse.toExponential(3)}   ` +
      `max error = ${p.max_error.toExponential(4)}`;
  } catch (e) {
    showError($('profile-stats'), e);
  }
}

function parseList(text) {
  return text.split(',').map((s) => s.trim()).filter((s) => s.length).map(Number);
}

function runStudy() {
  const status = $('study-status');
  status.textContent = 'running…';
  setTimeout(() => {
    try {
      const t0 = performance.now();
      const exps = parseList($('exps').value), ns = parseList($('ns').value);
      const s = study($('problem').value, Int32Array.from(exps), Uint32Array.from(ns));
      const err = s.errors(), rates = s.rates(), m = ns.length;
      const series = exps.map((k, r) => ({
        x: ns, y: Array.from(err.slice(r * m, (r + 1) * m)),
        color: COLORS[r % COLORS.length], label: `ε = 2^-${k}`, points: true,
      }));
      const u = s.uniform_errors();
      const ref = ns.map((n) => u[0] * (ns[0] / n) ** 2 * Math.log(n) / Math.log(ns[0]));
      series.push({ x: ns, y: ref, color: '#000', label: 'N⁻² ln N', dash: [3, 3] });
      plot($('loglog'), series, { logx: true, logy: true, xlabel: 'N' });
      renderTable(exps, ns, err, rates, u);
      status.textContent = `${(performance.now() - t0).toFixed(0)} ms`;
    } catch (e) {
      showError(status, e);
    }
  }, 10);
}

function renderTable(exps, ns, err, rates, uniform) {
  const m = ns.length;
  let html = '<table><tr><th>ε</th>' + ns.map((n) => `<th>N = ${n}</th>`).join('') + '</tr>';
  const fmtRate = (r) => (Number.isNaN(r) ? '' : r.toFixed(2));
  exps.forEach((k, r) => {
    html += `<tr><th>2^-${k}</th>` + ns.map((_, c) => `<td>${err[r * m + c].toExponential(4)}</td>`).join('') + '</tr>';
    html += '<tr><td></td>' + ns.map((_, c) => `<td>${fmtRate(rates[r * m + c])}</td>`).join('') + '</tr>';
  });
  html += '<tr><th>e^N</th>' + uniform.map((e) => `<td>${e.toExponential(4)}</td>`).join('') + '</tr></table>';
  $('study-table').innerHTML = html;
}

await init();
for (const id of ['problem', 'k', 'n', 'zoom']) $(id).addEventListener('input', updateProfile);
$('run').addEventListener('click', runStudy);
updateProfile();
runStudy();
