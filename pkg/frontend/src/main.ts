/** Entry point: upload a game, pick session settings, then play. */

import { ApiError, Client } from "./api";
import { PlayView } from "./app";
import { gameDoc } from "./schemas";

function field(label: string, input: HTMLElement): HTMLLabelElement {
  const wrap = document.createElement("label");
  wrap.append(label, input);
  return wrap;
}

export function mountSetup(root: HTMLElement, client: Client): void {
  const gameText = document.createElement("textarea");
  gameText.id = "game-json";
  gameText.rows = 12;
  gameText.placeholder = "paste a game document (JSON)";

  const sideSelect = document.createElement("select");
  sideSelect.id = "side-select";
  for (const [value, text] of [
    ["2", "play player 2"],
    ["1", "play player 1"],
    ["", "watch the engines"],
  ]) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = text;
    sideSelect.append(option);
  }

  const startInput = document.createElement("input");
  startInput.id = "start-input";
  startInput.placeholder = "start vertex, e.g. v0";

  const budgetInput = document.createElement("input");
  budgetInput.id = "budget-input";
  budgetInput.placeholder = "player 1 budget, e.g. 4";

  const horizonInput = document.createElement("input");
  horizonInput.id = "horizon-input";
  horizonInput.value = "64";

  const startButton = document.createElement("button");
  startButton.id = "start-button";
  startButton.textContent = "start session";

  const status = document.createElement("div");
  status.id = "setup-status";

  const playRoot = document.createElement("div");
  playRoot.id = "play-root";

  startButton.addEventListener("click", () => {
    void (async () => {
      try {
        const doc = gameDoc.parse(JSON.parse(gameText.value));
        const uploaded = await client.uploadGame(doc);
        const state = await client.startSession({
          game: uploaded.id,
          human_side:
            sideSelect.value === "" ? null : (Number(sideSelect.value) as 1 | 2),
          start: startInput.value.trim(),
          p1_budget: budgetInput.value.trim(),
          horizon: Number(horizonInput.value) || 64,
        });
        status.textContent = `session ${state.id} on game ${uploaded.id}`;
        new PlayView(playRoot, client, state, uploaded.game);
      } catch (error) {
        status.textContent =
          error instanceof ApiError
            ? `${error.code}: ${error.message}`
            : `cannot start: ${error}`;
      }
    })();
  });

  root.replaceChildren(
    field("game ", gameText),
    field("side ", sideSelect),
    field("start ", startInput),
    field("player 1 budget ", budgetInput),
    field("horizon ", horizonInput),
    startButton,
    status,
    playRoot
  );
}

const host = document.getElementById("setup");
if (host) {
  mountSetup(host, new Client(""));
}
