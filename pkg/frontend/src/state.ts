// View state is a pure function of the last service response: no game
// rules are re-implemented here.

import type { GuessOutcome, HintMap, SessionState } from "./api.js";

export type VertexStatus = "live" | "removed" | "mine";

export interface GameView {
    state: SessionState;
    hints: HintMap | null;
    lastOutcome: GuessOutcome | null;
    banner: string;
}

export function vertexStatus(view: GameView, v: number): VertexStatus {
    const { state } = view;
    if (state.status !== "active" && state.mine === v) return "mine";
    return state.live.includes(v) ? "live" : "removed";
}

export function bannerFor(state: SessionState): string {
    switch (state.status) {
        case "human_won":
            return "You win! The engine hit the mine.";
        case "human_lost":
            return "Boom - that was the mine. You lose.";
        default:
            return state.turn === "human" ? "Your turn: pick a vertex." : "Engine thinking...";
    }
}

export function fromSessionState(state: SessionState, hints: HintMap | null): GameView {
    return { state, hints, lastOutcome: null, banner: bannerFor(state) };
}

export function applyOutcome(outcome: GuessOutcome): GameView {
    return {
        state: outcome.state,
        hints: outcome.hints ?? null,
        lastOutcome: outcome,
        banner: bannerFor(outcome.state),
    };
}

export function bestHintVertices(hints: HintMap): number[] {
    const values = Object.values(hints).map((h) => h.decimal);
    const top = Math.max(...values);
    return Object.entries(hints)
        .filter(([, h]) => h.decimal === top)
        .map(([v]) => Number(v))
        .sort((a, b) => a - b);
}

export function historyLines(state: SessionState): string[] {
    return state.history.map((h, i) => {
        const who = h.actor === "human" ? "you" : "engine";
        const what = h.result === "hit_mine" ? "hit the mine!" : "safe";
        return `${i + 1}. ${who} guessed ${h.guess} - ${what}`;
    });
}
