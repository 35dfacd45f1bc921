import { GameClient } from "./api.js";
import { GameController } from "./model.js";
import { renderRound } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";
const seat = Number(params.get("seat") ?? "1");
const variant = params.get("variant") ?? "quantum";
const policy = params.get("opponent") ?? "qcg-best-response";
const rounds = Number(params.get("rounds") ?? "10");
const seed = Number(params.get("seed") ?? `${Date.now() % 1_000_000}`);

const root = document.getElementById("app");
if (!root) {
    throw new Error("missing #app container");
}

const client = new GameClient(baseUrl);
const controller = new GameController(client, (state) => renderRound(root, controller, state), seat);

controller
    .start({ variant, opponentPolicy: policy, rounds, seed })
    .catch((err) => {
        root.textContent = `failed to start session: ${err}`;
    });
