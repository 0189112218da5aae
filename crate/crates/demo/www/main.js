import init, { degree_windows, analyze_germ, jordan, bounds } from "./pkg/germlab_demo.js";

const $ = (id) => document.getElementById(id);
const pretty = (s) => JSON.stringify(JSON.parse(s), null, 2);

function renderWindows() {
  const out = JSON.parse(degree_windows(+$("w-n").value, +$("w-p").value, $("w-d").value));
  const box = $("w-out");
  box.replaceChildren();
  if (out.error) {
    box.textContent = out.error;
    return;
  }
  const top = Math.max(+$("w-p").value, 1);
  for (const w of out.windows) {
    const row = document.createElement("div");
    row.className = "degrees";
    const name = document.createElement("strong");
    name.textContent = `${w.theorem} `;
    row.append(name);
    for (let q = 0; q <= top; q++) {
      const cell = document.createElement("span");
      cell.textContent = q;
      if (w.degrees.includes(q)) cell.className = "on";
      row.append(cell);
    }
    box.append(row);
  }
  if (out.note) {
    const note = document.createElement("p");
    note.textContent = out.note;
    box.append(note);
  }
}

function renderBounds() {
  $("b-out").textContent = pretty(bounds(+$("b-n").value, +$("b-p").value, +$("b-l").value, $("b-iso").checked));
}

await init();
for (const id of ["w-n", "w-p", "w-d"]) $(id).addEventListener("input", renderWindows);
for (const id of ["b-n", "b-p", "b-l", "b-iso"]) $(id).addEventListener("input", renderBounds);
$("g-run").addEventListener("click", () => {
  $("g-out").textContent = pretty(analyze_germ($("g-in").value, $("g-d").value));
});
$("j-run").addEventListener("click", () => {
  $("j-out").textContent = pretty(jordan($("j-in").value));
});
renderWindows();
renderBounds();
