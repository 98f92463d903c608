/** Budget literal arithmetic mirrored from the service's display rules.
 *
 * A literal is a magnitude with an optional advantage star, or "top".
 * Levels linearize the chain 0 < 0* < 1 < 1* < ... as
 * level = 2 * magnitude + (starred ? 1 : 0); the two players' levels
 * always sum to 2k + 1, so exactly one side holds the star.
 */

export function parseLevel(literal: string): number {
  const match = /^(\d+)(\*?)$/.exec(literal);
  if (!match) {
    throw new Error(`not a finite budget literal: ${literal}`);
  }
  return 2 * Number(match[1]) + (match[2] === "*" ? 1 : 0);
}

export function formatLevel(level: number): string {
  if (!Number.isInteger(level) || level < 0) {
    throw new Error(`not a budget level: ${level}`);
  }
  const magnitude = Math.floor(level / 2);
  return level % 2 === 1 ? `${magnitude}*` : `${magnitude}`;
}

export function holdsAdvantage(literal: string): boolean {
  return parseLevel(literal) % 2 === 1;
}

export function opponentLiteral(literal: string, k: number): string {
  const level = parseLevel(literal);
  const other = 2 * k + 1 - level;
  if (other < 0) {
    throw new Error(`budget ${literal} exceeds the pot k=${k}`);
  }
  return formatLevel(other);
}

/** The value a threshold literal ("top" included) demands of a budget. */
export function thresholdLevel(literal: string, k: number): number {
  return literal === "top" ? 2 * k + 2 : parseLevel(literal);
}

export function meetsThreshold(
  budget: string,
  threshold: string,
  k: number
): boolean {
  return parseLevel(budget) >= thresholdLevel(threshold, k);
}
