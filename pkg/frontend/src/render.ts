// SVG board painting. Pure read of the view; all interaction goes back
// through the controller.

import type { GameView } from "./state.js";
import { historyLines, vertexStatus } from "./state.js";
import { BOARD, hintColor, layoutTree } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderTargets {
    board: SVGSVGElement;
    banner: HTMLElement;
    history: HTMLElement;
}

export function renderView(
    targets: RenderTargets,
    view: GameView | null,
    busy: boolean,
    onVertexClick: (v: number) => void,
): void {
    const { board, banner, history } = targets;
    board.innerHTML = "";
    if (!view) {
        banner.textContent = "Pick a tree and start a game.";
        history.innerHTML = "";
        return;
    }
    const { state, hints } = view;
    banner.textContent = busy ? "Engine thinking..." : view.banner;

    board.setAttribute("viewBox", `0 0 ${BOARD.width} ${BOARD.height}`);
    const layout = layoutTree(state.kind, state.n, state.edges);

    for (const [a, b] of state.edges) {
        const alive = state.live.includes(a) && state.live.includes(b);
        const pa = layout.get(a)!;
        const pb = layout.get(b)!;
        const line = document.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", String(pa.x));
        line.setAttribute("y1", String(pa.y));
        line.setAttribute("x2", String(pb.x));
        line.setAttribute("y2", String(pb.y));
        line.setAttribute("class", alive ? "edge" : "edge dead");
        board.appendChild(line);
    }

    let lo = 0;
    let hi = 1;
    if (hints) {
        const vals = Object.values(hints).map((h) => h.decimal);
        lo = Math.min(...vals);
        hi = Math.max(...vals);
    }
    for (let v = 1; v <= state.n; v++) {
        const p = layout.get(v)!;
        const status = vertexStatus(view, v);
        const group = document.createElementNS(SVG_NS, "g");
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", String(p.x));
        circle.setAttribute("cy", String(p.y));
        circle.setAttribute("r", "16");
        circle.setAttribute("class", `vertex ${status}`);
        const hint = hints?.[String(v)];
        if (hint && status === "live") {
            circle.style.fill = hintColor(hint.decimal, lo, hi);
            const title = document.createElementNS(SVG_NS, "title");
            title.textContent = `win ${hint.fraction ?? ""} = ${hint.decimal.toFixed(4)}`;
            group.appendChild(title);
        }
        group.appendChild(circle);
        const label = document.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String(p.x));
        label.setAttribute("y", String(p.y + 5));
        label.setAttribute("class", "vertex-label");
        label.textContent = status === "mine" ? "X" : String(v);
        group.appendChild(label);
        if (status === "live" && !busy) {
            group.addEventListener("click", () => onVertexClick(v));
            group.setAttribute("class", "clickable");
        }
        board.appendChild(group);
    }

    history.innerHTML = "";
    for (const line of historyLines(state)) {
        const li = document.createElement("li");
        li.textContent = line;
        history.appendChild(li);
    }
}
