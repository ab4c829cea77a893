import { describe, expect, it } from "vitest";

import type { GameApi, GuessOutcome, SessionState } from "../src/api.js";
import { GameController } from "../src/controller.js";

function makeState(partial: Partial<SessionState>): SessionState {
    return {
        id: "s1",
        spec: "path:3",
        kind: "path",
        n: 3,
        edges: [[1, 2], [2, 3]],
        live: [1, 2, 3],
        turn: "human",
        status: "active",
        engine: "optimal",
        human_first: true,
        history: [],
        ...partial,
    };
}

// structural stub standing in for the HTTP client
function stubApi(overrides: Partial<Record<keyof GameApi, unknown>> = {}) {
    let resolveGuess: ((o: GuessOutcome) => void) | null = null;
    const api = {
        createSession: async () => ({ id: "s1", state: makeState({}) }),
        getState: async () => makeState({}),
        hints: async () => ({
            hints: { "2": { fraction: "2/3", decimal: 2 / 3 } },
        }),
        guess: () =>
            new Promise<GuessOutcome>((resolve) => {
                resolveGuess = resolve;
            }),
        ...overrides,
    } as unknown as GameApi;
    return { api, finishGuess: (o: GuessOutcome) => resolveGuess?.(o) };
}

describe("GameController", () => {
    it("starts a game and loads the hint overlay", async () => {
        const { api } = stubApi();
        const ctl = new GameController(api);
        const view = await ctl.start({
            tree: "path:3",
            engine: "optimal",
            humanFirst: true,
            hints: true,
        });
        expect(view.state.id).toBe("s1");
        expect(view.hints?.["2"].decimal).toBeCloseTo(2 / 3);
        expect(ctl.busy).toBe(false);
    });

    it("blocks clicks while a guess is in flight (no double submission)", async () => {
        const { api, finishGuess } = stubApi();
        const ctl = new GameController(api);
        await ctl.start({ tree: "path:3", engine: "optimal", humanFirst: true, hints: false });
        const pending = ctl.clickVertex(2);
        expect(ctl.busy).toBe(true);
        expect(await ctl.clickVertex(1)).toBe("busy");
        finishGuess({
            vertex: 2,
            hit_mine: true,
            surviving_component: [],
            engine_reply: null,
            state: makeState({ status: "human_lost", live: [1, 3], mine: 2 }),
        });
        expect(await pending).toBe("applied");
        expect(ctl.busy).toBe(false);
        expect(await ctl.clickVertex(1)).toBe("finished");
    });

    it("ignores dead vertices and foreign turns without calling the service", async () => {
        let called = 0;
        const { api } = stubApi({
            guess: async () => {
                called += 1;
                throw new Error("should not be called");
            },
        });
        const ctl = new GameController(api);
        await ctl.start({ tree: "path:3", engine: "optimal", humanFirst: true, hints: false });
        ctl.view!.state.live = [1, 3];
        expect(await ctl.clickVertex(2)).toBe("vertex_dead");
        ctl.view!.state.turn = "engine";
        expect(await ctl.clickVertex(1)).toBe("not_your_turn");
        expect(called).toBe(0);
    });

    it("reports no_game before a session exists", async () => {
        const { api } = stubApi();
        const ctl = new GameController(api);
        expect(await ctl.clickVertex(1)).toBe("no_game");
    });
});
