// Client-side board layouts. Paths render on a line, stars radially,
// spiders as radial arms, anything else as a layered embedding by
// distance from a most-central vertex.

export interface Point {
    x: number;
    y: number;
}

export type Layout = Map<number, Point>;

export const BOARD = { width: 640, height: 420, margin: 48 };

function adjacency(n: number, edges: [number, number][]): Map<number, number[]> {
    const adj = new Map<number, number[]>();
    for (let v = 1; v <= n; v++) adj.set(v, []);
    for (const [a, b] of edges) {
        adj.get(a)!.push(b);
        adj.get(b)!.push(a);
    }
    return adj;
}

function pathOrder(n: number, edges: [number, number][]): number[] {
    const adj = adjacency(n, edges);
    if (n === 1) return [1];
    const ends = [...adj.entries()].filter(([, ns]) => ns.length === 1).map(([v]) => v);
    let cur = Math.min(...ends);
    const order = [cur];
    let prev = -1;
    while (order.length < n) {
        const next = adj.get(cur)!.find((w) => w !== prev)!;
        order.push(next);
        prev = cur;
        cur = next;
    }
    return order;
}

function lineLayout(n: number, edges: [number, number][]): Layout {
    const { width, height, margin } = BOARD;
    const order = pathOrder(n, edges);
    const step = n > 1 ? (width - 2 * margin) / (n - 1) : 0;
    const layout: Layout = new Map();
    order.forEach((v, i) => layout.set(v, { x: margin + i * step, y: height / 2 }));
    return layout;
}

function radialLayout(n: number, edges: [number, number][]): Layout {
    const { width, height, margin } = BOARD;
    const adj = adjacency(n, edges);
    let hub = 1;
    for (const [v, ns] of adj) if (ns.length > adj.get(hub)!.length) hub = v;
    const layout: Layout = new Map([[hub, { x: width / 2, y: height / 2 }]]);
    const leaves = [...adj.keys()].filter((v) => v !== hub);
    const radius = Math.min(width, height) / 2 - margin;
    leaves.forEach((v, i) => {
        const angle = (2 * Math.PI * i) / leaves.length - Math.PI / 2;
        layout.set(v, {
            x: width / 2 + radius * Math.cos(angle),
            y: height / 2 + radius * Math.sin(angle),
        });
    });
    return layout;
}

function spiderLayout(n: number, edges: [number, number][]): Layout {
    const { width, height, margin } = BOARD;
    const adj = adjacency(n, edges);
    let root = 1;
    for (const [v, ns] of adj) if (ns.length > adj.get(root)!.length) root = v;
    const layout: Layout = new Map([[root, { x: width / 2, y: height / 2 }]]);
    const arms = adj.get(root)!.slice().sort((a, b) => a - b);
    const maxRadius = Math.min(width, height) / 2 - margin;
    arms.forEach((first, i) => {
        const angle = (2 * Math.PI * i) / arms.length - Math.PI / 2;
        // walk the leg outward
        const leg = [first];
        let prev = root;
        let cur = first;
        for (;;) {
            const next = adj.get(cur)!.find((w) => w !== prev);
            if (next === undefined) break;
            leg.push(next);
            prev = cur;
            cur = next;
        }
        leg.forEach((v, depth) => {
            const r = (maxRadius * (depth + 1)) / leg.length;
            layout.set(v, {
                x: width / 2 + r * Math.cos(angle),
                y: height / 2 + r * Math.sin(angle),
            });
        });
    });
    return layout;
}

function layeredLayout(n: number, edges: [number, number][]): Layout {
    const { width, height, margin } = BOARD;
    const adj = adjacency(n, edges);
    // root at a vertex minimising eccentricity (small n: brute force BFS)
    const ecc = new Map<number, number>();
    for (let v = 1; v <= n; v++) {
        const dist = new Map([[v, 0]]);
        const queue = [v];
        while (queue.length) {
            const u = queue.shift()!;
            for (const w of adj.get(u)!)
                if (!dist.has(w)) {
                    dist.set(w, dist.get(u)! + 1);
                    queue.push(w);
                }
        }
        ecc.set(v, Math.max(...dist.values()));
    }
    let root = 1;
    for (const [v, e] of ecc) if (e < ecc.get(root)!) root = v;

    const depth = new Map([[root, 0]]);
    const rows: number[][] = [[root]];
    const queue = [root];
    while (queue.length) {
        const u = queue.shift()!;
        for (const w of adj.get(u)!)
            if (!depth.has(w)) {
                const d = depth.get(u)! + 1;
                depth.set(w, d);
                (rows[d] ??= []).push(w);
                queue.push(w);
            }
    }
    const layout: Layout = new Map();
    const rowGap = rows.length > 1 ? (height - 2 * margin) / (rows.length - 1) : 0;
    rows.forEach((row, d) => {
        const colGap = (width - 2 * margin) / (row.length + 1);
        row.sort((a, b) => a - b).forEach((v, i) => {
            layout.set(v, { x: margin + colGap * (i + 1), y: margin + rowGap * d });
        });
    });
    return layout;
}

export function layoutTree(
    kind: string,
    n: number,
    edges: [number, number][],
): Layout {
    if (n === 1) return new Map([[1, { x: BOARD.width / 2, y: BOARD.height / 2 }]]);
    switch (kind) {
        case "path":
            return lineLayout(n, edges);
        case "star":
            return radialLayout(n, edges);
        case "spider":
            return spiderLayout(n, edges);
        default:
            return layeredLayout(n, edges);
    }
}

// Hint colour scale: interpolate from cold (low win probability) to hot.
export function hintColor(value: number, lo: number, hi: number): string {
    const t = hi > lo ? (value - lo) / (hi - lo) : 1;
    const hue = 220 - 180 * Math.max(0, Math.min(1, t)); // blue -> orange
    return `hsl(${hue.toFixed(0)}, 85%, 55%)`;
}
