// Typed client for the game service. All game logic lives server-side;
// this module only shuttles JSON.

export type Prob = { fraction: string | null; decimal: number };
export type HintMap = Record<string, Prob>;

export interface HistoryEntry {
    actor: "human" | "engine";
    guess: number;
    result: "miss" | "hit_mine";
}

export interface SessionState {
    id: string;
    spec: string;
    kind: "path" | "star" | "spider" | "generic";
    n: number;
    edges: [number, number][];
    live: number[];
    turn: "human" | "engine";
    status: "active" | "human_won" | "human_lost";
    engine: string;
    human_first: boolean;
    history: HistoryEntry[];
    mine?: number;
}

export interface EngineReply {
    vertex: number;
    hit_mine: boolean;
    surviving_component: number[];
}

export interface GuessOutcome {
    vertex: number;
    hit_mine: boolean;
    surviving_component: number[];
    engine_reply: EngineReply | null;
    hints?: HintMap;
    state: SessionState;
}

export interface ApiError {
    error: string;
    message: string;
}

export class ServiceError extends Error {
    code: string;
    constructor(code: string, message: string) {
        super(message);
        this.code = code;
    }
}

async function unwrap<T>(res: Response): Promise<T> {
    const body = await res.json();
    if (!res.ok) {
        const err = body as ApiError;
        throw new ServiceError(err.error ?? "unknown", err.message ?? res.statusText);
    }
    return body as T;
}

export class GameApi {
    constructor(readonly baseUrl: string = "", readonly fetchFn: typeof fetch = fetch) {}

    private async post<T>(path: string, payload: unknown): Promise<T> {
        const res = await this.fetchFn(`${this.baseUrl}${path}`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        });
        return unwrap<T>(res);
    }

    private async get<T>(path: string): Promise<T> {
        const res = await this.fetchFn(`${this.baseUrl}${path}`);
        return unwrap<T>(res);
    }

    createSession(tree: string, engine: string, humanFirst: boolean, seed?: number) {
        return this.post<{ id: string; state: SessionState }>("/api/session", {
            tree,
            engine,
            human_first: humanFirst,
            seed: seed ?? null,
        });
    }

    getState(id: string) {
        return this.get<SessionState>(`/api/session/${id}`);
    }

    guess(id: string, vertex: number, hints: boolean) {
        return this.post<GuessOutcome>(`/api/session/${id}/guess`, { vertex, hints });
    }

    hints(id: string) {
        return this.get<{ hints: HintMap }>(`/api/session/${id}/hints`);
    }
}
