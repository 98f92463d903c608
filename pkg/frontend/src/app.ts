/** Interactive session view: board, budgets, bidding form, history. */

import { ApiError, Client } from "./api";
import { renderBoard } from "./board";
import { holdsAdvantage } from "./budgets";
import { GameDoc, RoundRecord, SessionView } from "./schemas";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function neighborsOf(game: GameDoc, vertex: string): string[] {
  return game.edges
    .filter(([from]) => from === vertex)
    .map(([, to]) => to)
    .sort();
}

function describeRound(record: RoundRecord): string {
  const star = record.advantage_used ? " using the advantage" : "";
  return (
    `round ${record.round}: at ${record.vertex} bids ` +
    `${record.bids.p1} / ${record.bids.p2}, ` +
    `player ${record.winner} won${star}, token to ${record.next_vertex}`
  );
}

export class PlayView {
  showThresholds = false;

  private readonly boardHost: HTMLDivElement;
  private readonly budgetsHost: HTMLDivElement;
  private readonly hintHost: HTMLDivElement;
  private readonly form: HTMLFormElement;
  private readonly bidInput: HTMLInputElement;
  private readonly moveSelect: HTMLSelectElement;
  private readonly errorHost: HTMLDivElement;
  private readonly roundsHost: HTMLOListElement;
  private readonly outcomeHost: HTMLDivElement;
  private readonly whatIfInput: HTMLInputElement;
  private readonly whatIfResult: HTMLDivElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
    private state: SessionView,
    private readonly gameDoc: GameDoc
  ) {
    this.boardHost = el("div", { id: "board" });
    this.budgetsHost = el("div", { id: "budgets" });
    this.hintHost = el("div", { id: "hint" });
    this.errorHost = el("div", { id: "bid-error", class: "error", hidden: "" });
    this.roundsHost = el("ol", { id: "rounds" });
    this.outcomeHost = el("div", { id: "outcome", hidden: "" });
    this.whatIfInput = el("input", { id: "whatif-input", placeholder: "0*" });
    this.whatIfResult = el("div", { id: "whatif-result" });

    const toggle = el("input", { type: "checkbox", id: "threshold-toggle" });
    toggle.addEventListener("change", () => {
      this.showThresholds = (toggle as HTMLInputElement).checked;
      this.render();
    });
    const toggleLabel = el("label", {}, " show thresholds");
    toggleLabel.prepend(toggle);

    this.bidInput = el("input", { id: "bid-input", placeholder: "bid, e.g. 0*" });
    this.moveSelect = el("select", { id: "move-select" });
    const submit = el("button", { id: "bid-submit", type: "submit" }, "bid");
    this.form = el("form", { id: "bid-form" });
    this.form.append(this.bidInput, this.moveSelect, submit);
    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitBid(this.bidInput.value.trim(), this.moveSelect.value);
    });

    const useHint = el("button", { id: "use-hint", type: "button" }, "use hint");
    useHint.addEventListener("click", () => {
      if (this.state.hint) {
        this.bidInput.value = this.state.hint.bid;
        this.moveSelect.value = this.state.hint.move;
      }
    });
    this.hintHost.append(el("span", { id: "hint-text" }), useHint);

    const whatIfButton = el(
      "button",
      { id: "whatif-button", type: "button" },
      "what if?"
    );
    whatIfButton.addEventListener("click", () => {
      void this.probe(this.whatIfInput.value.trim());
    });
    const whatIfHost = el("div", { id: "whatif" });
    whatIfHost.append(this.whatIfInput, whatIfButton, this.whatIfResult);

    this.root.replaceChildren(
      this.boardHost,
      this.budgetsHost,
      toggleLabel,
      this.hintHost,
      this.form,
      this.errorHost,
      whatIfHost,
      this.roundsHost,
      this.outcomeHost
    );
    this.render();
  }

  static async open(
    root: HTMLElement,
    client: Client,
    sessionId: string
  ): Promise<PlayView> {
    const state = await client.getSession(sessionId);
    const upload = await client.getGame(state.game);
    return new PlayView(root, client, state, upload.game);
  }

  get current(): SessionView {
    return this.state;
  }

  render(): void {
    renderBoard(this.boardHost, this.gameDoc, {
      token: this.state.vertex,
      thresholds: this.showThresholds ? this.state.thresholds : null,
    });

    const side = this.state.human_side;
    const lines: string[] = [];
    for (const player of [1, 2] as const) {
      const literal = player === 1 ? this.state.p1_budget : this.state.p2_budget;
      const star = holdsAdvantage(literal) ? " (holds the advantage)" : "";
      const who =
        side === null ? "engine" : player === side ? "you" : "engine";
      const engine = this.state.engine[`${player}`];
      const label = engine ? `, ${engine.label}` : "";
      lines.push(`player ${player} (${who}${label}): ${literal}${star}`);
    }
    this.budgetsHost.replaceChildren(
      el("div", { class: "pot" }, `pot k=${this.state.k}`),
      ...lines.map((text, i) =>
        el("div", { class: "budget", "data-player": `${i + 1}` }, text)
      )
    );

    const hintText = this.hintHost.querySelector("#hint-text")!;
    hintText.textContent = this.state.hint
      ? `hint: bid ${this.state.hint.bid}, move to ${this.state.hint.move}`
      : "no certified hint from here";

    const moves = neighborsOf(this.gameDoc, this.state.vertex);
    this.moveSelect.replaceChildren(
      ...moves.map((move) => el("option", { value: move }, move))
    );

    this.roundsHost.replaceChildren(
      ...this.state.rounds.map((record) =>
        el("li", { class: "round" }, describeRound(record))
      )
    );

    if (this.state.over && this.state.outcome) {
      const out = this.state.outcome;
      const how = out.provisional
        ? "horizon reached, provisional"
        : out.reason;
      this.outcomeHost.textContent = `play over: player ${out.winner} wins (${how})`;
      this.outcomeHost.removeAttribute("hidden");
      this.form.querySelectorAll("input,select,button").forEach((node) => {
        node.setAttribute("disabled", "");
      });
    } else {
      this.outcomeHost.setAttribute("hidden", "");
    }
  }

  async submitBid(bid: string, move: string): Promise<void> {
    this.errorHost.setAttribute("hidden", "");
    this.errorHost.textContent = "";
    try {
      const reply = await this.client.bid(this.state.id, { bid, move });
      this.state = reply.state;
      this.bidInput.value = "";
      this.render();
    } catch (error) {
      if (error instanceof ApiError) {
        this.errorHost.textContent = error.message;
        this.errorHost.removeAttribute("hidden");
        return;
      }
      throw error;
    }
  }

  async probe(bid: string): Promise<void> {
    if (!bid) {
      return;
    }
    try {
      const reply = await this.client.whatIf(this.state.id, bid);
      if (!reply.legal) {
        this.whatIfResult.textContent = `bid ${reply.bid} is illegal: ${reply.reason}`;
        return;
      }
      const win = reply.if_win
        ? `win: you ${reply.if_win.you}, opponent ${reply.if_win.opponent}`
        : "";
      const lose = reply.if_lose
        ? `lose: you ${reply.if_lose.you}, opponent ${reply.if_lose.opponent} ` +
          `(they pay ${reply.if_lose.paid})`
        : "";
      this.whatIfResult.textContent = `bid ${reply.bid} - ${win}; ${lose}`;
    } catch (error) {
      if (error instanceof ApiError) {
        this.whatIfResult.textContent = error.message;
        return;
      }
      throw error;
    }
  }
}
