// Client-side session state: a mirror of the player-filtered server view
// plus UI concerns (selection, hints, banners, optimistic updates). All
// legality data comes from the service; the client only arranges it.

import { GameClient } from "./api.js";
import { formatProbability } from "./rational.js";
import { ApiError, Pair, RoundResult, SessionView } from "./types.js";

export const OPERATOR_CARDS = [1, 2, 3, 4] as const;

export const OPERATOR_DESCRIPTIONS: Record<number, string> = {
    1: "O1 — identity (hide 0)",
    2: "O2 — (I + b†)/√2",
    3: "O3 — (I − b†)/√2",
    4: "O4 — b† (hide 1)",
};

/** All ordered guess cards shown to the second caller. */
export const ALL_PAIRS: Pair[] = ([] as Pair[]).concat(
    ...[1, 2, 3, 4].map((j) => [1, 2, 3, 4].map((k) => [j, k] as Pair)),
);

export function pairKey(pair: Pair): string {
    return `${pair[0]},${pair[1]}`;
}

export function pairsEqual(a: Pair, b: Pair): boolean {
    return a[0] === b[0] && a[1] === b[1];
}

/**
 * Enabled state for every guess card during a quantum guess phase.
 * The first caller's legal pairs arrive in the view itself; the second
 * caller's admissible set is fetched from the analysis endpoint, which the
 * server also enforces with 409s - the contract test pins the two together.
 */
export function enabledGuessPairs(view: SessionView, admissible: Pair[] | null): Map<string, boolean> {
    const enabled = new Map<string, boolean>();
    for (const pair of ALL_PAIRS) {
        enabled.set(pairKey(pair), false);
    }
    if (view.phase === "guess1" && Array.isArray(view.legal_guesses)) {
        for (const pair of view.legal_guesses as Pair[]) {
            enabled.set(pairKey(pair), true);
        }
    } else if (view.phase === "guess2" && admissible) {
        for (const pair of admissible) {
            enabled.set(pairKey(pair), true);
        }
    }
    return enabled;
}

export interface ChartBar {
    total: number;
    label: string; // four-decimal rendering of the server rational
    height: number; // 0..1 for layout
}

/** Bar-chart data for a resolved round, straight from server rationals. */
export function chartBars(result: RoundResult): ChartBar[] {
    return result.distribution.map((p, total) => {
        const label =
            typeof p.exact === "string" ? formatProbability(p.exact) : p.float.toFixed(4);
        return { total, label, height: Number(label) };
    });
}

export interface UiState {
    view: SessionView | null;
    seat: number;
    banner: string | null;
    busy: boolean;
    hintsOn: boolean;
    hintPair: Pair | null;
    admissible: Pair[] | null;
    retry: (() => Promise<void>) | null;
}

export class GameController {
    state: UiState;
    private sessionId = "";
    private hints: Record<string, Pair> | null = null;

    constructor(
        private client: GameClient,
        private onChange: (state: UiState) => void,
        seat: number = 1,
    ) {
        this.state = {
            view: null,
            seat,
            banner: null,
            busy: false,
            hintsOn: false,
            hintPair: null,
            admissible: null,
            retry: null,
        };
    }

    private emit(): void {
        this.onChange(this.state);
    }

    private perspective(): "player1" | "player2" {
        return this.state.seat === 1 ? "player1" : "player2";
    }

    async start(config: {
        variant: string;
        opponentPolicy: string;
        rounds: number;
        seed: number;
        scoring?: string;
    }): Promise<void> {
        const players = [
            { kind: "human" as const },
            { kind: "engine" as const, policy: config.opponentPolicy },
        ];
        if (this.state.seat === 2) {
            players.reverse();
        }
        const created = await this.client.createSession({
            variant: config.variant,
            players,
            rounds: config.rounds,
            seed: config.seed,
            scoring: config.scoring,
        });
        this.sessionId = created.id;
        await this.refresh();
    }

    async refresh(): Promise<void> {
        this.state.view = await this.client.getView(this.sessionId, this.perspective());
        await this.syncAdmissibility();
        this.emit();
    }

    private async syncAdmissibility(): Promise<void> {
        const view = this.state.view;
        this.state.admissible = null;
        this.state.hintPair = null;
        if (!view || view.variant !== "quantum") {
            return;
        }
        if (view.phase === "guess2" && view.to_move === this.state.seat) {
            const prior = view.public_guesses.player1 as Pair;
            const response = await this.client.admissible([prior]);
            this.state.admissible = response.admissible;
        }
        if (this.state.hintsOn && view.phase === "guess1" && view.your_draw !== null) {
            if (!this.hints) {
                this.hints = await this.client.guessHints();
            }
            this.state.hintPair = this.hints[`O${view.your_draw}`] ?? null;
        }
    }

    async toggleHints(): Promise<void> {
        this.state.hintsOn = !this.state.hintsOn;
        await this.syncAdmissibility();
        this.emit();
    }

    /**
     * Send a mutating action with an optimistic local update; a rule
     * rejection (409/403/422) reverts to the authoritative view and shows
     * the reason; a network failure offers a retry instead of dropping.
     */
    private async mutate(optimistic: (view: SessionView) => void, send: () => Promise<SessionView>): Promise<void> {
        if (!this.state.view || this.state.busy) {
            return;
        }
        const before = this.state.view;
        const predicted = structuredClone(before);
        optimistic(predicted);
        this.state.view = predicted;
        this.state.busy = true;
        this.state.banner = null;
        this.state.retry = null;
        this.emit();
        try {
            this.state.view = await send();
            await this.syncAdmissibility();
        } catch (err) {
            this.state.view = before;
            if (err instanceof ApiError) {
                this.state.banner = err.body.overlap_sq
                    ? `${err.body.error} — |overlap|² = ${err.body.overlap_sq}`
                    : err.body.error;
            } else {
                this.state.banner = `network failure: ${String(err)}`;
                this.state.retry = () => this.mutate(optimistic, send);
            }
        } finally {
            this.state.busy = false;
            this.emit();
        }
    }

    async submitDraw(draw: number): Promise<void> {
        await this.mutate(
            (view) => {
                view.your_draw = draw;
                view.phase = view.phase === "draw1" ? "draw2" : "guess1";
            },
            () => this.client.submitDraw(this.sessionId, this.state.seat, draw),
        );
    }

    async submitGuess(guess: number | Pair): Promise<void> {
        await this.mutate(
            (view) => {
                view.public_guesses[this.perspective()] = guess;
            },
            () => this.client.submitGuess(this.sessionId, this.state.seat, guess),
        );
    }

    async resolve(): Promise<void> {
        await this.mutate(
            () => {},
            () => this.client.resolve(this.sessionId),
        );
    }

    /** The resolve button is enabled only in the resolve phase. */
    canResolve(): boolean {
        return this.state.view?.phase === "resolve";
    }
}
