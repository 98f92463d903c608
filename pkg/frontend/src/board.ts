/** SVG board: vertices, sinks, edges, the token, optional threshold labels. */

import { GameDoc } from "./schemas";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 420;
const RADIUS = 150;
const NODE = 26;

export interface BoardOptions {
  token?: string | null;
  thresholds?: Record<string, string> | null;
}

interface Point {
  x: number;
  y: number;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {}
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function layout(game: GameDoc): Map<string, Point> {
  const ids = [
    ...game.vertices.map((v) => v.id).sort(),
    ...game.sinks.map((s) => s.id).sort(),
  ];
  const center = SIZE / 2;
  const points = new Map<string, Point>();
  ids.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / ids.length - Math.PI / 2;
    points.set(id, {
      x: center + RADIUS * Math.cos(angle),
      y: center + RADIUS * Math.sin(angle),
    });
  });
  return points;
}

function drawEdge(svg: SVGSVGElement, from: Point, to: Point): void {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const len = Math.hypot(dx, dy);
  if (len < 1) {
    return;
  }
  const trim = NODE / len;
  const line = svgEl("line", {
    class: "edge",
    x1: `${from.x + dx * trim}`,
    y1: `${from.y + dy * trim}`,
    x2: `${to.x - dx * trim}`,
    y2: `${to.y - dy * trim}`,
    "marker-end": "url(#arrow)",
  });
  svg.appendChild(line);
}

function drawLoop(svg: SVGSVGElement, at: Point): void {
  const loop = svgEl("path", {
    class: "edge loop",
    d:
      `M ${at.x - NODE / 2} ${at.y - NODE + 4} ` +
      `C ${at.x - NODE} ${at.y - 2.2 * NODE}, ` +
      `${at.x + NODE} ${at.y - 2.2 * NODE}, ` +
      `${at.x + NODE / 2} ${at.y - NODE + 4}`,
    fill: "none",
    "marker-end": "url(#arrow)",
  });
  svg.appendChild(loop);
}

export function renderBoard(
  host: Element,
  game: GameDoc,
  options: BoardOptions = {}
): SVGSVGElement {
  const points = layout(game);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    class: "board",
    role: "img",
  });

  const defs = svgEl("defs");
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const [from, to] of game.edges) {
    const a = points.get(from);
    const b = points.get(to);
    if (!a || !b) {
      continue;
    }
    if (from === to) {
      drawLoop(svg, a);
    } else {
      drawEdge(svg, a, b);
    }
  }

  const sinkIds = new Set(game.sinks.map((s) => s.id));
  const frugal = new Map(game.sinks.map((s) => [s.id, s.frugal]));
  const priority = new Map(game.vertices.map((v) => [v.id, v.priority]));

  for (const [id, at] of points) {
    const isSink = sinkIds.has(id);
    const group = svgEl("g", {
      class: [
        isSink ? "sink" : "vertex",
        options.token === id ? "token-here" : "",
      ]
        .filter(Boolean)
        .join(" "),
      "data-id": id,
    });
    if (isSink) {
      group.appendChild(
        svgEl("rect", {
          x: `${at.x - NODE}`,
          y: `${at.y - NODE * 0.75}`,
          width: `${2 * NODE}`,
          height: `${1.5 * NODE}`,
          rx: "6",
        })
      );
    } else {
      group.appendChild(
        svgEl("circle", { cx: `${at.x}`, cy: `${at.y}`, r: `${NODE}` })
      );
    }
    const label = svgEl("text", {
      x: `${at.x}`,
      y: `${at.y - 2}`,
      "text-anchor": "middle",
      class: "node-name",
    });
    label.textContent = id;
    group.appendChild(label);

    const detail = svgEl("text", {
      x: `${at.x}`,
      y: `${at.y + 12}`,
      "text-anchor": "middle",
      class: "node-detail",
    });
    detail.textContent = isSink
      ? `needs ${frugal.get(id)}`
      : `priority ${priority.get(id)}`;
    group.appendChild(detail);

    if (options.token === id) {
      group.appendChild(
        svgEl("circle", {
          class: "token",
          cx: `${at.x}`,
          cy: `${at.y - NODE - 8}`,
          r: "7",
        })
      );
    }
    if (options.thresholds && options.thresholds[id] !== undefined) {
      const tag = svgEl("text", {
        x: `${at.x}`,
        y: `${at.y + NODE + 16}`,
        "text-anchor": "middle",
        class: "threshold-label",
        "data-id": id,
      });
      tag.textContent = `threshold ${options.thresholds[id]}`;
      group.appendChild(tag);
    }
    svg.appendChild(group);
  }

  host.replaceChildren(svg);
  return svg;
}
