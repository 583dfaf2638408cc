import init, { weight_histogram, classify_triple, cosets } from "./pkg/terncode_wasm.js";

const $ = (id) => document.getElementById(id);

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err && err.message ? err.message : err);
  target.appendChild(p);
}

function cell(row, text, tag = "td") {
  const c = document.createElement(tag);
  c.textContent = text;
  row.appendChild(c);
  return c;
}

function table(headers) {
  const t = document.createElement("table");
  const head = t.insertRow();
  for (const h of headers) cell(head, h, "th");
  return t;
}

function renderHistogram(data) {
  const out = $("hist-out");
  out.innerHTML = "";
  const info = document.createElement("p");
  info.textContent = `length ${data.l}, ${data.method}, ${data.total} triples`;
  out.appendChild(info);
  const entries = Object.entries(data.counts);
  // counts can exceed 2^53; the log only needs the leading digits
  const log = (s) => Math.log10(Number(s.slice(0, 15))) + Math.max(0, s.length - 15);
  const top = Math.max(...entries.map(([, n]) => log(n)));
  const t = table(["weight", "count", ""]);
  for (const [w, n] of entries) {
    const row = t.insertRow();
    cell(row, w);
    cell(row, n);
    const bar = cell(row, "");
    bar.className = "bar-cell";
    const div = document.createElement("div");
    div.className = "bar";
    div.style.width = `${Math.max(1, (100 * log(n)) / top)}%`;
    bar.appendChild(div);
  }
  out.appendChild(t);
}

function renderClass(data) {
  const out = $("cls-out");
  out.innerHTML = "";
  const c = data.class;
  const t = table(["kind", "epsilon", "rank", "j", "S", "weight", "counted", "agree"]);
  const row = t.insertRow();
  for (const v of [c.kind, c.epsilon, c.rank, c.j, data.sum, data.weight, data.weight_counted, data.agree]) {
    cell(row, String(v));
  }
  out.appendChild(t);
  const note = document.createElement("p");
  note.innerHTML = "<small>S is written as a + b&zeta; with &zeta; a primitive cube root of unity.</small>";
  out.appendChild(note);
}

function renderCosets(data) {
  const out = $("cos-out");
  out.innerHTML = "";
  const p = document.createElement("p");
  p.textContent = `code dimension ${data.dimension}`;
  out.appendChild(p);
  const t = table(["s", "size", "coset"]);
  for (const c of data.cosets) {
    const row = t.insertRow();
    cell(row, c.s);
    cell(row, c.size);
    const e = cell(row, c.elements.join(" "));
    e.style.textAlign = "left";
  }
  out.appendChild(t);
  const u = table(["i", "1 + 3^i", "size", "predicted"]);
  for (const r of data.one_plus_p_i) {
    const row = u.insertRow();
    for (const v of [r.i, r.s, r.size, r.predicted]) cell(row, v);
  }
  out.appendChild(u);
}

function wire(formId, target, run) {
  $(formId).addEventListener("submit", (ev) => {
    ev.preventDefault();
    try {
      run();
    } catch (err) {
      showError($(target), err);
    }
  });
}

await init();
wire("hist-form", "hist-out", () => renderHistogram(JSON.parse(weight_histogram(Number($("hist-m").value)))));
wire("cls-form", "cls-out", () =>
  renderClass(JSON.parse(classify_triple(Number($("cls-m").value), $("cls-a").value, $("cls-b").value, $("cls-c").value))),
);
wire("cos-form", "cos-out", () => renderCosets(JSON.parse(cosets(Number($("cos-m").value)))));
