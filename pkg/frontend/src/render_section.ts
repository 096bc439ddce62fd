// Cross-section view of a refocus scene: vertical plane lines ordered
// by z, the defining ray chords, and degenerate entries called out in
// their own style. Hovering a plane shows its exact z via <title>.

import { SceneDoc, SceneElement } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const WIDTH = 760;
const HEIGHT = 360;
const MARGIN = 50;

function svgElement(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderCrossSection(scene: SceneDoc): SVGSVGElement {
  if (scene.kind !== "refocus-section") {
    throw new Error(`cannot draw scene kind ${scene.kind} as a cross section`);
  }
  const planes = scene.elements.filter((e) => e.type === "plane");
  const rays = scene.elements.filter((e) => e.type === "ray-segment");
  const notes = scene.elements.filter((e) => e.type === "label");

  const zs = planes.map((p) => p.z as number);
  for (const ray of rays) {
    if (ray.from) zs.push(ray.from[0]);
    if (ray.to) zs.push(ray.to[0]);
  }
  const zMin = Math.min(...zs);
  const zMax = Math.max(...zs);
  const zSpan = zMax - zMin || 1;
  const ySpan =
    Math.max(
      1e-9,
      ...rays.flatMap((r) => [Math.abs(r.from?.[1] ?? 0), Math.abs(r.to?.[1] ?? 0)]),
    ) * 2;

  const xOf = (z: number) => MARGIN + ((z - zMin) / zSpan) * (WIDTH - 2 * MARGIN);
  const yOf = (y: number) => HEIGHT / 2 - (y / ySpan) * (HEIGHT - 2 * MARGIN);

  const svg = svgElement("svg", {
    width: String(WIDTH),
    height: String(HEIGHT),
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "section-view",
  }) as SVGSVGElement;

  const axis = svgElement("line", {
    x1: String(xOf(zMin)),
    y1: String(yOf(0)),
    x2: String(xOf(zMax)),
    y2: String(yOf(0)),
    stroke: "#bbb",
    "stroke-dasharray": "2,4",
  });
  svg.appendChild(axis);

  planes.forEach((plane, index) => {
    svg.appendChild(renderPlane(plane, xOf, index));
  });

  for (const ray of rays) {
    if (!ray.from || !ray.to) continue;
    svg.appendChild(
      svgElement("line", {
        x1: String(xOf(ray.from[0])),
        y1: String(yOf(ray.from[1])),
        x2: String(xOf(ray.to[0])),
        y2: String(yOf(ray.to[1])),
        stroke: "#1f77b4",
        class: "ray",
      }),
    );
  }

  notes.forEach((note, index) => {
    const text = svgElement("text", {
      x: String(MARGIN),
      y: String(HEIGHT - 8 - 14 * index),
      "font-size": "11",
      class: note.degenerate ? "note degenerate" : "note",
      fill: note.degenerate ? "#b22222" : "#333",
    });
    text.textContent = note.label ?? note.id;
    svg.appendChild(text);
  });

  return svg;
}

function renderPlane(
  plane: SceneElement,
  xOf: (z: number) => number,
  index: number,
): SVGElement {
  const x = xOf(plane.z as number);
  const group = svgElement("g", { class: "plane", "data-id": plane.id });
  const title = document.createElementNS(SVG_NS, "title");
  title.textContent = `${plane.id} z = ${plane.z} mm`;
  group.appendChild(title);
  const dashed = plane.id.startsWith("d_a-") || plane.id.startsWith("d_a+");
  group.appendChild(
    svgElement("line", {
      x1: String(x),
      y1: String(MARGIN),
      x2: String(x),
      y2: String(HEIGHT - MARGIN),
      stroke: "#444",
      ...(dashed ? { "stroke-dasharray": "6,3" } : {}),
    }),
  );
  const label = svgElement("text", {
    x: String(x),
    y: String(MARGIN - 6 - 12 * (index % 3)), // stagger crowded labels
    "font-size": "11",
    "text-anchor": "middle",
    class: "plane-label",
  });
  label.textContent = plane.label ?? plane.id;
  group.appendChild(label);
  return group;
}
