/** Typed HTTP client for the bidding-game service. */

import { z } from "zod";
import {
  ActionHalf,
  BidReply,
  ErrorBody,
  GameUpload,
  SessionView,
  ThresholdsReply,
  WhatIfReply,
  bidReply,
  errorBody,
  gameUpload,
  sessionView,
  thresholdsReply,
  whatIfReply,
} from "./schemas";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface StartSessionParams {
  game: string;
  human_side: 1 | 2 | null;
  start: string;
  p1_budget: string;
  horizon?: number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request<T>(
    schema: z.ZodType<T>,
    path: string,
    init?: RequestInit
  ): Promise<T> {
    const reply = await this.fetchImpl(this.base + path, init);
    const text = await reply.text();
    if (!reply.ok) {
      const body: ErrorBody = errorBody.parse(JSON.parse(text));
      throw new ApiError(reply.status, body.code, body.message);
    }
    return schema.parse(JSON.parse(text));
  }

  private post<T>(schema: z.ZodType<T>, path: string, body: unknown): Promise<T> {
    return this.request(schema, path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  uploadGame(doc: unknown): Promise<GameUpload> {
    return this.post(gameUpload, "/games", doc);
  }

  getGame(id: string): Promise<GameUpload> {
    return this.request(gameUpload, `/games/${id}`);
  }

  thresholds(id: string): Promise<ThresholdsReply> {
    return this.request(thresholdsReply, `/games/${id}/thresholds`);
  }

  startSession(params: StartSessionParams): Promise<SessionView> {
    return this.post(sessionView, "/sessions", params);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request(sessionView, `/sessions/${id}`);
  }

  bid(id: string, half: ActionHalf): Promise<BidReply> {
    return this.post(bidReply, `/sessions/${id}/bid`, half);
  }

  whatIf(id: string, bid: string): Promise<WhatIfReply> {
    return this.request(
      whatIfReply,
      `/sessions/${id}/whatif?bid=${encodeURIComponent(bid)}`
    );
  }

  async log(id: string): Promise<string> {
    const reply = await this.fetchImpl(`${this.base}/sessions/${id}/log`);
    if (!reply.ok) {
      const body = errorBody.parse(JSON.parse(await reply.text()));
      throw new ApiError(reply.status, body.code, body.message);
    }
    return reply.text();
  }
}
