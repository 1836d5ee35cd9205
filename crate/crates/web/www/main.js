import init, { transliterate, distanceTable, correctSentence } from "./pkg/devspell_web.js";

const $ = (id) => document.getElementById(id);

function cell(tag, text, cls) {
  const el = document.createElement(tag);
  el.textContent = text;
  if (cls) el.className = cls;
  return el;
}

function row(tag, values, cls) {
  const tr = document.createElement("tr");
  if (cls) tr.className = cls;
  for (const v of values) tr.appendChild(cell(tag, v));
  return tr;
}

function runCorrect() {
  const k = Number($("correct-k").value) || 10;
  const res = JSON.parse(correctSentence($("correct-input").value, k));
  $("correct-output").textContent = res.text;

  const table = $("correct-candidates");
  table.replaceChildren();
  const notes = [];
  for (const c of res.audit.corrections) {
    table.appendChild(row("th", [`${c.original} (word ${c.index})`, "WX", "Probability", "Distance"]));
    for (const cand of c.candidates) {
      const cls = cand.token === c.chosen ? "chosen" : "";
      table.appendChild(row("td", [cand.token, cand.wx, cand.prob.toFixed(4), cand.med], cls));
    }
  }
  for (const s of res.audit.skipped) {
    notes.push(`${s.original}: no candidates, left unchanged`);
  }
  if (res.detected.length === 0) notes.push("No misspellings detected.");
  $("correct-notes").textContent = notes.join("; ");
}

function runTranslit() {
  const res = JSON.parse(transliterate($("translit-input").value, $("translit-direction").value));
  const out = $("translit-output");
  out.className = res.error ? "error" : "deva";
  out.textContent = res.error ?? res.output;
}

function runDistance() {
  const res = JSON.parse(distanceTable($("dist-a").value, $("dist-b").value));
  $("dist-summary").textContent = `${res.a_wx} vs ${res.b_wx}: distance ${res.distance}`;

  const table = $("dist-matrix");
  table.replaceChildren();
  const a = ["", ...res.a_wx];
  const b = ["", ...res.b_wx];
  table.appendChild(row("th", ["", ...b.map((c) => c || "ε")]));
  res.matrix.forEach((values, i) => {
    const tr = row("td", values);
    tr.insertBefore(cell("th", a[i] || "ε"), tr.firstChild);
    table.appendChild(tr);
  });
}

await init();
$("correct-run").addEventListener("click", runCorrect);
$("translit-run").addEventListener("click", runTranslit);
$("dist-run").addEventListener("click", runDistance);
runCorrect();
runTranslit();
runDistance();
