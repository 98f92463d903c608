import { describe, expect, it } from "vitest";

import {
  formatLevel,
  holdsAdvantage,
  meetsThreshold,
  opponentLiteral,
  parseLevel,
} from "../src/budgets";
import { fixture } from "./helpers";

describe("budget literals", () => {
  it("parses and formats the chain in order", () => {
    const chain = ["0", "0*", "1", "1*", "2", "2*", "3"];
    chain.forEach((literal, level) => {
      expect(parseLevel(literal)).toBe(level);
      expect(formatLevel(level)).toBe(literal);
    });
    expect(() => parseLevel("top")).toThrow();
    expect(() => parseLevel("1**")).toThrow();
    expect(() => parseLevel("")).toThrow();
  });

  it("splits the pot between the players", () => {
    expect(opponentLiteral("4", 5)).toBe("1*");
    expect(opponentLiteral("1*", 5)).toBe("4");
    expect(() => opponentLiteral("6", 5)).toThrow();
  });

  it("exactly one side holds the advantage in every recorded state", () => {
    const states = [
      fixture<any>("session_start.json"),
      ...fixture<any[]>("steps.json").map((step) => step.response.state),
    ];
    for (const state of states) {
      expect(opponentLiteral(state.p1_budget, state.k)).toBe(state.p2_budget);
      expect(holdsAdvantage(state.p1_budget)).not.toBe(
        holdsAdvantage(state.p2_budget)
      );
    }
  });

  it("compares budgets against thresholds, top included", () => {
    expect(meetsThreshold("5", "5", 5)).toBe(true);
    expect(meetsThreshold("4*", "5", 5)).toBe(false);
    expect(meetsThreshold("5*", "top", 5)).toBe(false);
  });
});
