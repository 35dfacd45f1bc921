import {
    AdmissibleResponse,
    ApiError,
    CreateSessionResponse,
    Pair,
    PlayerSlot,
    SessionView,
} from "./types.js";

export class GameClient {
    constructor(private baseUrl: string) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const res = await fetch(`${this.baseUrl}${path}`, init);
        const body = await res.json();
        if (!res.ok) {
            throw new ApiError(res.status, body);
        }
        return body as T;
    }

    private post<T>(path: string, payload: unknown): Promise<T> {
        return this.request<T>(path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(payload),
        });
    }

    createSession(config: {
        variant: string;
        players: PlayerSlot[];
        rounds: number;
        seed: number;
        scoring?: string;
    }): Promise<CreateSessionResponse> {
        return this.post("/sessions", config);
    }

    getView(sessionId: string, as: "player1" | "player2" | "spectator"): Promise<SessionView> {
        return this.request(`/sessions/${sessionId}?as=${as}`);
    }

    submitDraw(sessionId: string, player: number, draw: number): Promise<SessionView> {
        return this.post(`/sessions/${sessionId}/draw`, { player, draw });
    }

    submitGuess(sessionId: string, player: number, guess: number | Pair): Promise<SessionView> {
        return this.post(`/sessions/${sessionId}/guess`, { player, guess });
    }

    resolve(sessionId: string): Promise<SessionView> {
        return this.post(`/sessions/${sessionId}/resolve`, {});
    }

    admissible(prior: Pair[]): Promise<AdmissibleResponse> {
        const text = prior.map(([j, k]) => `(${j},${k})`).join(",");
        return this.request(`/analysis/qcg/admissible?prior=${encodeURIComponent(text)}`);
    }

    /** Engine hint source: the certified guess per draw, served not computed. */
    async guessHints(): Promise<Record<string, Pair>> {
        const report = await this.request<{
            edge_strategy: { guess_by_draw: Record<string, Pair> };
        }>("/analysis/qcg/exhaustive");
        return report.edge_strategy.guess_by_draw;
    }

    scgTables(): Promise<unknown> {
        return this.request("/analysis/scg/tables");
    }
}
