// Payload shapes of the game service. Exact numbers arrive as rational
// strings ("11/21") with a float alongside; the client renders the exact
// form and never recomputes game math locally.

export interface ExactFloat {
    exact: string | { a: string; b: string } | null;
    float: number;
}

export type Pair = [number, number];

export type Guess = number | Pair | null;

export interface PlayerSlot {
    kind: "human" | "engine";
    policy?: string;
}

export interface RoundResult {
    round: number;
    draws: Record<string, number>;
    guesses: Record<string, number | Pair>;
    distribution: ExactFloat[];
    outcome: number | null;
    payoffs: Record<string, ExactFloat> | null;
    winner: number | null;
    void: boolean;
}

export interface SessionView {
    id: string;
    variant: "classical" | "semiclassical" | "quantum";
    n_coins: number;
    rounds: number;
    round: number;
    phase: "draw1" | "draw2" | "guess1" | "guess2" | "resolve" | "finished";
    scoring: string;
    to_move: number | null;
    players: PlayerSlot[];
    perspective: string;
    your_seat: number | null;
    your_draw: number | null;
    public_guesses: Record<string, Guess>;
    scores: Record<string, ExactFloat>;
    wins: Record<string, number>;
    void_rounds: number;
    last_result: RoundResult | null;
    history: RoundResult[];
    legal_draws?: number[];
    legal_guesses?: number[] | Pair[];
}

export interface CreateSessionResponse {
    id: string;
    state: SessionView;
}

export interface AdmissibleResponse {
    prior: Pair[];
    admissible: Pair[];
}

export interface ServiceError {
    error: string;
    overlap_sq?: string;
    taken?: number;
}

export class ApiError extends Error {
    constructor(
        public status: number,
        public body: ServiceError,
    ) {
        super(body.error ?? `service error ${status}`);
    }
}
