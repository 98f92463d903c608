/** Zod schemas for every JSON body the service exchanges with the browser. */

import { z } from "zod";

export const budgetLiteral = z.string().regex(/^(\d+\*?|top)$/);
export const finiteBudget = z.string().regex(/^\d+\*?$/);

export const gameDoc = z.object({
  schema: z.number().int(),
  k: z.number().int().positive(),
  vertices: z.array(
    z.object({ id: z.string(), priority: z.number().int().nonnegative() })
  ),
  sinks: z.array(z.object({ id: z.string(), frugal: budgetLiteral })),
  edges: z.array(z.tuple([z.string(), z.string()])),
  objective: z
    .object({ kind: z.string(), target: z.array(z.string()).optional() })
    .optional(),
});
export type GameDoc = z.infer<typeof gameDoc>;

export const gameUpload = z.object({
  schema: z.number().int(),
  id: z.string(),
  game: gameDoc,
});
export type GameUpload = z.infer<typeof gameUpload>;

export const thresholdsReply = z.object({
  schema: z.number().int(),
  id: z.string(),
  thresholds: z.record(z.string(), budgetLiteral),
  certification: z.string(),
});
export type ThresholdsReply = z.infer<typeof thresholdsReply>;

export const roundRecord = z.object({
  round: z.number().int().positive(),
  vertex: z.string(),
  p1_budget: finiteBudget,
  bids: z.object({ p1: finiteBudget, p2: finiteBudget }),
  winner: z.union([z.literal(1), z.literal(2)]),
  advantage_used: z.boolean(),
  next_vertex: z.string(),
});
export type RoundRecord = z.infer<typeof roundRecord>;

export const outcome = z.object({
  winner: z.union([z.literal(1), z.literal(2)]),
  reason: z.enum(["sink", "horizon"]),
  provisional: z.boolean(),
});
export type Outcome = z.infer<typeof outcome>;

export const actionHalf = z.object({ bid: finiteBudget, move: z.string() });
export type ActionHalf = z.infer<typeof actionHalf>;

export const engineInfo = z.object({ source: z.string(), label: z.string() });

export const sessionView = z.object({
  schema: z.number().int(),
  id: z.string(),
  game: z.string(),
  k: z.number().int().positive(),
  human_side: z.union([z.literal(1), z.literal(2)]).nullable(),
  vertex: z.string(),
  p1_budget: finiteBudget,
  p2_budget: finiteBudget,
  over: z.boolean(),
  outcome: outcome.nullable(),
  rounds: z.array(roundRecord),
  thresholds: z.record(z.string(), budgetLiteral),
  engine: z.record(z.string(), engineInfo),
  hint: actionHalf.nullable(),
  horizon: z.number().int().positive(),
});
export type SessionView = z.infer<typeof sessionView>;

export const bidReply = z.object({
  schema: z.number().int(),
  round: roundRecord,
  state: sessionView,
});
export type BidReply = z.infer<typeof bidReply>;

export const errorBody = z.object({
  schema: z.number().int(),
  code: z.string(),
  message: z.string(),
});
export type ErrorBody = z.infer<typeof errorBody>;

export const whatIfReply = z.object({
  schema: z.number().int(),
  bid: budgetLiteral,
  legal: z.boolean(),
  reason: z.string().nullable(),
  if_win: z.object({ you: finiteBudget, opponent: finiteBudget }).optional(),
  if_lose: z
    .object({ you: finiteBudget, opponent: finiteBudget, paid: finiteBudget })
    .optional(),
});
export type WhatIfReply = z.infer<typeof whatIfReply>;
