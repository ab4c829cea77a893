// Orchestrates the session against the service. Interaction is disabled
// while a request (which includes the engine's reply) is in flight, so a
// guess can never be double-submitted.

import { GameApi, ServiceError } from "./api.js";
import type { GameView } from "./state.js";
import { applyOutcome, fromSessionState } from "./state.js";

export interface StartForm {
    tree: string;
    engine: string;
    humanFirst: boolean;
    hints: boolean;
    seed?: number;
}

export type ClickResult =
    | "applied"
    | "busy"
    | "not_your_turn"
    | "vertex_dead"
    | "finished"
    | "no_game";

export class GameController {
    view: GameView | null = null;
    busy = false;
    hintsEnabled = false;
    error: string | null = null;

    constructor(
        private api: GameApi,
        private onChange: (view: GameView | null) => void = () => {},
    ) {}

    private emit() {
        this.onChange(this.view);
    }

    async start(form: StartForm): Promise<GameView> {
        this.busy = true;
        this.error = null;
        try {
            const { id, state } = await this.api.createSession(
                form.tree,
                form.engine,
                form.humanFirst,
                form.seed,
            );
            this.hintsEnabled = form.hints;
            let hints = null;
            if (form.hints && state.status === "active") {
                hints = (await this.api.hints(id)).hints;
            }
            this.view = fromSessionState(state, hints);
            return this.view;
        } catch (e) {
            this.view = null;
            this.error = e instanceof ServiceError ? `${e.code}: ${e.message}` : String(e);
            throw e;
        } finally {
            this.busy = false;
            this.emit();
        }
    }

    canClick(vertex: number): ClickResult {
        if (!this.view) return "no_game";
        if (this.busy) return "busy";
        const { state } = this.view;
        if (state.status !== "active") return "finished";
        if (state.turn !== "human") return "not_your_turn";
        if (!state.live.includes(vertex)) return "vertex_dead";
        return "applied";
    }

    async clickVertex(vertex: number): Promise<ClickResult> {
        const verdict = this.canClick(vertex);
        if (verdict !== "applied") return verdict;
        this.busy = true;
        this.emit();
        try {
            const outcome = await this.api.guess(
                this.view!.state.id,
                vertex,
                this.hintsEnabled,
            );
            this.view = applyOutcome(outcome);
            return "applied";
        } catch (e) {
            if (e instanceof ServiceError) {
                this.error = `${e.code}: ${e.message}`;
                if (e.code === "vertex_dead") return "vertex_dead";
                if (e.code === "not_your_turn") return "not_your_turn";
                if (e.code === "session_finished") return "finished";
            }
            throw e;
        } finally {
            this.busy = false;
            this.emit();
        }
    }
}
