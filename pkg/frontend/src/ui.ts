// DOM rendering. Everything displayed is taken from the server view (or
// the analysis endpoints); this layer only lays it out.

import { GameController } from "./model.js";
import {
    ALL_PAIRS,
    OPERATOR_CARDS,
    OPERATOR_DESCRIPTIONS,
    chartBars,
    enabledGuessPairs,
    pairKey,
    pairsEqual,
    UiState,
} from "./model.js";
import { Pair, RoundResult, SessionView } from "./types.js";

function el(tag: string, className?: string, text?: string): HTMLElement {
    const node = document.createElement(tag);
    if (className) {
        node.className = className;
    }
    if (text !== undefined) {
        node.textContent = text;
    }
    return node;
}

function renderScores(view: SessionView): HTMLElement {
    const box = el("div", "scores");
    for (const seat of [1, 2]) {
        const key = `player${seat}`;
        const slot = view.players[seat - 1];
        const who = slot.kind === "engine" ? `engine (${slot.policy})` : "you";
        const score = view.scores[key];
        box.append(
            el(
                "div",
                "score",
                `player ${seat} [${who}] — score ${score.exact ?? score.float} ` +
                    `(${score.float.toFixed(4)}), wins ${view.wins[key]}`,
            ),
        );
    }
    box.append(el("div", "score", `void rounds: ${view.void_rounds}`));
    return box;
}

function renderChart(result: RoundResult): HTMLElement {
    const box = el("div", "chart");
    box.append(el("h3", undefined, `round ${result.round} outcome distribution`));
    const bars = el("div", "bars");
    for (const bar of chartBars(result)) {
        const column = el("div", "bar-column");
        const fill = el("div", "bar-fill");
        fill.style.height = `${Math.round(bar.height * 120)}px`;
        column.append(fill, el("div", "bar-label", `${bar.total}: ${bar.label}`));
        bars.append(column);
    }
    box.append(bars);
    if (result.outcome !== null) {
        box.append(el("div", undefined, `measured total: ${result.outcome}`));
    }
    if (result.payoffs) {
        box.append(
            el(
                "div",
                undefined,
                `gains — player1: ${result.payoffs.player1.exact}, ` +
                    `player2: ${result.payoffs.player2.exact}`,
            ),
        );
    }
    if (result.winner) {
        box.append(el("div", undefined, `winner: player ${result.winner}`));
    }
    return box;
}

function renderDrawCards(controller: GameController, view: SessionView): HTMLElement {
    const box = el("div", "cards");
    const myTurn = view.to_move === controller.state.seat && view.phase.startsWith("draw");
    const legal = new Set(view.legal_draws ?? []);
    for (const op of view.variant === "classical" ? view.legal_draws ?? [] : OPERATOR_CARDS) {
        const button = el("button", "card") as HTMLButtonElement;
        button.textContent =
            view.variant === "classical" ? `hide ${op}` : OPERATOR_DESCRIPTIONS[op as number];
        button.disabled = !myTurn || (legal.size > 0 && !legal.has(op as number));
        button.onclick = () => void controller.submitDraw(op as number);
        box.append(button);
    }
    return box;
}

function renderGuessCards(controller: GameController, view: SessionView): HTMLElement {
    const box = el("div", "cards");
    const myTurn = view.to_move === controller.state.seat && view.phase.startsWith("guess");
    if (view.variant !== "quantum") {
        for (const total of (view.legal_guesses as number[]) ?? []) {
            const button = el("button", "card") as HTMLButtonElement;
            button.textContent = `call ${total}`;
            button.disabled = !myTurn;
            button.onclick = () => void controller.submitGuess(total);
            box.append(button);
        }
        return box;
    }
    const enabled = enabledGuessPairs(view, controller.state.admissible);
    const hint = controller.state.hintPair;
    for (const pair of ALL_PAIRS) {
        const button = el("button", "card pair") as HTMLButtonElement;
        button.textContent = `O${pair[0]}·O${pair[1]}`;
        button.disabled = !myTurn || !enabled.get(pairKey(pair));
        if (hint && pairsEqual(pair, hint as Pair)) {
            button.classList.add("hint");
        }
        button.onclick = () => void controller.submitGuess(pair);
        box.append(button);
    }
    return box;
}

export function renderRound(root: HTMLElement, controller: GameController, state: UiState): void {
    root.replaceChildren();
    const view = state.view;
    if (!view) {
        root.append(el("div", "status", "no session"));
        return;
    }
    root.append(
        el(
            "div",
            "status",
            `round ${view.round}/${view.rounds} — phase ${view.phase}` +
                (view.to_move ? ` — player ${view.to_move} to move` : ""),
        ),
    );
    if (view.your_draw !== null) {
        root.append(el("div", "own-draw", `your hidden draw: ${view.your_draw}`));
    }
    const guesses = view.public_guesses;
    root.append(
        el(
            "div",
            "guesses",
            `public guesses — player1: ${JSON.stringify(guesses.player1)}, ` +
                `player2: ${JSON.stringify(guesses.player2)}`,
        ),
    );
    root.append(renderScores(view));
    if (state.banner) {
        const banner = el("div", "banner", state.banner);
        if (state.retry) {
            const retry = el("button", "retry", "retry") as HTMLButtonElement;
            retry.onclick = () => void state.retry?.();
            banner.append(retry);
        }
        root.append(banner);
    }
    if (view.phase.startsWith("draw")) {
        root.append(renderDrawCards(controller, view));
    }
    if (view.phase.startsWith("guess")) {
        root.append(renderGuessCards(controller, view));
        if (view.variant === "quantum") {
            const toggle = el("button", "hint-toggle") as HTMLButtonElement;
            toggle.textContent = state.hintsOn ? "hints: on" : "hints: off";
            toggle.onclick = () => void controller.toggleHints();
            root.append(toggle);
        }
    }
    const resolveButton = el("button", "resolve") as HTMLButtonElement;
    resolveButton.textContent = "resolve round";
    resolveButton.disabled = !controller.canResolve();
    resolveButton.onclick = () => void controller.resolve();
    root.append(resolveButton);
    if (view.last_result) {
        root.append(renderChart(view.last_result));
    }
    if (view.phase === "finished") {
        root.append(el("div", "status", "game over"));
    }
}
