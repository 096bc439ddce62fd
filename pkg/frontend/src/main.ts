// App wiring: builds the parameter panel, result tables, and the two
// scene views, and binds them to a DesignSession. Pure DOM, no
// framework; every number shown comes from a service response.

import { ApiClient, LengthValue } from "./api.js";
import { renderDepthPlanes } from "./render_planes.js";
import { renderCrossSection } from "./render_section.js";
import { DesignSession, NumericField, SessionState } from "./session.js";

const PARAM_FIELDS: Array<{ field: NumericField; label: string }> = [
  { field: "pixel_pitch", label: "pixel pitch (mm)" },
  { field: "micro_lens_pitch", label: "micro lens pitch (mm)" },
  { field: "micro_lens_focal", label: "micro lens focal (mm)" },
  { field: "micro_image_resolution", label: "pixels per micro image" },
  { field: "main_lens_focal", label: "main lens focal (mm)" },
  { field: "hiatus", label: "principal plane separation (mm)" },
  { field: "exit_pupil_distance", label: "exit pupil distance (mm)" },
  { field: "focus_distance", label: "focus distance (mm)" },
  { field: "image_distance", label: "image distance (mm)" },
];

export function formatLength(value: LengthValue | number | undefined | null): string {
  if (value === undefined || value === null) return "-";
  if (typeof value === "string") return value;
  return value.toFixed(4);
}

export function initApp(root: HTMLElement, baseUrl = ""): DesignSession {
  const session = new DesignSession(new ApiClient(baseUrl));
  root.innerHTML = buildLayout();

  for (const { field } of PARAM_FIELDS) {
    const input = root.querySelector<HTMLInputElement>(`#param-${field}`)!;
    input.addEventListener("input", () => session.setParameter(field, input.value));
  }

  const slider = root.querySelector<HTMLInputElement>("#shift-slider")!;
  slider.addEventListener("input", () => {
    root.querySelector("#shift-value")!.textContent = slider.value;
    session.setShift(Number(slider.value));
  });

  const gapInput = root.querySelector<HTMLInputElement>("#gap-input")!;
  gapInput.addEventListener("input", () => session.setGap(Number(gapInput.value)));

  const dxInput = root.querySelector<HTMLInputElement>("#dx-input")!;
  dxInput.addEventListener("input", () => {
    const parts = dxInput.value.split(",").map((part) => part.trim()).filter(Boolean);
    session.setDisparities(parts.map(Number));
  });

  session.subscribe((state) => render(root, state));
  void session.init();
  return session;
}

function buildLayout(): string {
  const fields = PARAM_FIELDS.map(
    ({ field, label }) => `
      <label class="param">
        <span>${label}</span>
        <input type="number" id="param-${field}" step="any">
        <span class="field-error" id="error-${field}" hidden></span>
      </label>`,
  ).join("");
  return `
    <div id="banner" class="banner" hidden></div>
    <div class="columns">
      <form class="panel" onsubmit="return false">
        <h2>Camera</h2>
        ${fields}
        <h2>Refocusing</h2>
        <label class="param">
          <span>shift a = <output id="shift-value">1</output></span>
          <input type="range" id="shift-slider" min="-2" max="2" step="0.25" value="1">
        </label>
        <h2>Triangulation</h2>
        <label class="param">
          <span>viewpoint gap G</span>
          <input type="number" id="gap-input" step="1" value="1">
          <span class="field-error" id="error-gap" hidden></span>
        </label>
        <label class="param">
          <span>disparities (px, comma separated)</span>
          <input type="text" id="dx-input" value="0, 1">
          <span class="field-error" id="error-dx" hidden></span>
        </label>
      </form>
      <div class="results">
        <p id="da-readout" class="readout"></p>
        <table id="refocus-table">
          <thead><tr><th>a</th><th>d_a MLA (mm)</th><th>d_a H1U (mm)</th>
            <th>DOF near (mm)</th><th>DOF far (mm)</th><th></th></tr></thead>
          <tbody></tbody>
        </table>
        <table id="triangulation-table">
          <thead><tr><th>dx</th><th>Z MLA (mm)</th><th>Z H1U (mm)</th><th></th></tr></thead>
          <tbody></tbody>
        </table>
        <p id="stereo-readout" class="readout"></p>
      </div>
    </div>
    <div class="views">
      <section><h2>Cross section</h2><div id="section-view"></div></section>
      <section><h2>Depth planes</h2><div id="planes-view"></div></section>
    </div>`;
}

function render(root: HTMLElement, state: SessionState): void {
  const banner = root.querySelector<HTMLElement>("#banner")!;
  banner.hidden = state.banner === null;
  banner.textContent = state.banner ?? "";

  if (state.params !== null) {
    for (const { field } of PARAM_FIELDS) {
      const input = root.querySelector<HTMLInputElement>(`#param-${field}`)!;
      const value = state.params[field];
      if (document.activeElement !== input) {
        input.value = value === undefined ? "" : String(value);
      }
    }
  }
  for (const key of [...PARAM_FIELDS.map((f) => f.field as string), "gap", "dx"]) {
    const span = root.querySelector<HTMLElement>(`#error-${key}`);
    if (!span) continue;
    const message = state.fieldErrors[key];
    span.hidden = message === undefined;
    span.textContent = message ?? "";
  }

  renderRefocus(root, state);
  renderTriangulation(root, state);

  if (state.refocusScene) {
    const view = root.querySelector<HTMLElement>("#section-view")!;
    view.replaceChildren(renderCrossSection(state.refocusScene));
  }
  if (state.triangulationScene && state.params) {
    const view = root.querySelector<HTMLElement>("#planes-view")!;
    view.replaceChildren(
      renderDepthPlanes(
        state.triangulationScene,
        state.triangulation?.result.G ?? state.gap,
        state.params.micro_lens_pitch,
      ),
    );
  }
}

function renderRefocus(root: HTMLElement, state: SessionState): void {
  const readout = root.querySelector<HTMLElement>("#da-readout")!;
  const tbody = root.querySelector<HTMLElement>("#refocus-table tbody")!;
  if (state.refocus === null) {
    readout.textContent = "";
    return;
  }
  const entries = state.refocus.result;
  const current = entries[entries.length - 1];
  readout.textContent = current.error
    ? `d_a(${current.a}): ${current.error}`
    : `d_a(${current.a}) = ${formatLength(current.d_a_from_mla)} mm from the MLA`;
  tbody.replaceChildren(
    ...entries.map((entry) => {
      const row = document.createElement("tr");
      if (entry.error) row.className = "degenerate";
      row.append(
        cell(String(entry.a)),
        cell(formatLength(entry.d_a_from_mla)),
        cell(formatLength(entry.d_a_from_h1u)),
        cell(formatLength(entry.dof_near_from_mla)),
        cell(formatLength(entry.dof_far_from_mla)),
        cell(entry.error ?? ""),
      );
      return row;
    }),
  );
}

function renderTriangulation(root: HTMLElement, state: SessionState): void {
  const readout = root.querySelector<HTMLElement>("#stereo-readout")!;
  const tbody = root.querySelector<HTMLElement>("#triangulation-table tbody")!;
  if (state.triangulation === null) {
    readout.textContent = "";
    return;
  }
  const result = state.triangulation.result;
  readout.textContent =
    `G = ${result.G}: baseline ${formatLength(result.B_G)} mm, ` +
    `entrance pupil ${formatLength(result.z_pupil_from_mla)} mm from the MLA`;
  tbody.replaceChildren(
    ...result.planes.map((plane) => {
      const row = document.createElement("tr");
      if (plane.error) row.className = "degenerate";
      row.append(
        cell(String(plane.dx)),
        cell(formatLength(plane.Z_from_mla)),
        cell(formatLength(plane.Z_from_h1u)),
        cell(plane.error ?? ""),
      );
      return row;
    }),
  );
}

function cell(text: string): HTMLTableCellElement {
  const td = document.createElement("td");
  td.textContent = text;
  return td;
}
