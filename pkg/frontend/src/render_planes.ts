// Depth-plane view of a triangulation scene: one rectangle per finite
// Z plane, receding left to right with distance, labeled (G, dx).
// Rectangle extents are cosmetic: 20 micro lens pitches magnified
// linearly with depth (anchored at the entrance pupil), drawn in a
// fixed oblique projection.

import { SceneDoc } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const WIDTH = 760;
const HEIGHT = 360;
const MARGIN = 50;
const OBLIQUE = 0.35; // depth axis slope of the fake 3-D projection

function svgElement(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderDepthPlanes(
  scene: SceneDoc,
  gap: number,
  microLensPitch: number,
): SVGSVGElement {
  if (scene.kind !== "triangulation-3d") {
    throw new Error(`cannot draw scene kind ${scene.kind} as depth planes`);
  }
  const svg = svgElement("svg", {
    width: String(WIDTH),
    height: String(HEIGHT),
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "planes-view",
  }) as SVGSVGElement;

  const gapLabel = svgElement("text", {
    x: String(MARGIN),
    y: "24",
    "font-size": "13",
    class: "gap-label",
  });
  gapLabel.textContent = `camera gap G = ${gap}`;
  svg.appendChild(gapLabel);

  const pupil = scene.elements.find((e) => e.id === "pupil");
  const depthPlanes = scene.elements.filter(
    (e) => e.type === "plane" && e.id.startsWith("Z:"),
  );
  const notes = scene.elements.filter((e) => e.type === "label");

  if (depthPlanes.length === 0) {
    const message = svgElement("text", {
      x: String(WIDTH / 2),
      y: String(HEIGHT / 2),
      "text-anchor": "middle",
      "font-size": "13",
      class: "empty-message",
    });
    message.textContent = "no finite depth planes for these disparities";
    svg.appendChild(message);
    appendNotes(svg, notes);
    return svg;
  }

  const pupilZ = pupil?.z ?? 0;
  const zMax = Math.max(...depthPlanes.map((p) => p.z as number));
  const xOf = (z: number) => MARGIN + (z / (zMax || 1)) * (WIDTH - 2 * MARGIN - 60);

  // half-extent in mm: 20 lenslets, magnified with depth past the pupil;
  // drawn normalized so the farthest plane fills the widest rectangle
  const extentOf = (z: number) => 20 * microLensPitch * (pupilZ > 0 ? z / pupilZ : 1);
  const maxExtent = Math.max(...depthPlanes.map((p) => extentOf(p.z as number)));

  // draw far to near so closer planes overlap farther ones
  const ordered = [...depthPlanes].sort((a, b) => (b.z as number) - (a.z as number));
  for (const plane of ordered) {
    const z = plane.z as number;
    const px = Math.max(14, 120 * (extentOf(z) / (maxExtent || 1)));
    const x = xOf(z);
    const yCenter = HEIGHT / 2 + 30;

    const group = svgElement("g", { class: "depth-plane", "data-id": plane.id });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${plane.id} z = ${z} mm`;
    group.appendChild(title);

    const points = [
      [x - px, yCenter + px * 0.8],
      [x + px * OBLIQUE - px, yCenter + px * 0.8 - px * 1.6],
      [x + px * OBLIQUE + px, yCenter + px * 0.8 - px * 1.6],
      [x + px, yCenter + px * 0.8],
    ]
      .map(([cx, cy]) => `${cx.toFixed(1)},${cy.toFixed(1)}`)
      .join(" ");
    group.appendChild(
      svgElement("polygon", {
        points,
        fill: "#1f77b4",
        "fill-opacity": "0.18",
        stroke: "#1f77b4",
      }),
    );

    const label = svgElement("text", {
      x: String(x),
      y: String(yCenter + px * 0.8 + 16),
      "font-size": "11",
      "text-anchor": "middle",
      class: "plane-label",
    });
    label.textContent = plane.label ?? plane.id;
    group.appendChild(label);
    svg.appendChild(group);
  }

  appendNotes(svg, notes);
  return svg;
}

function appendNotes(svg: SVGSVGElement, notes: SceneDoc["elements"]): void {
  notes.forEach((note, index) => {
    const text = svgElement("text", {
      x: String(WIDTH - MARGIN),
      y: String(HEIGHT - 8 - 14 * index),
      "text-anchor": "end",
      "font-size": "11",
      fill: note.degenerate ? "#b22222" : "#333",
      class: note.degenerate ? "note degenerate" : "note",
    });
    text.textContent = note.label ?? note.id;
    svg.appendChild(text);
  });
}
