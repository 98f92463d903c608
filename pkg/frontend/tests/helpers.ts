/** Recorded service traffic, replayed as a fetch implementation. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

export function fixture<T = any>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf8"));
}

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

function jsonResponse(status: number, body: unknown): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    text: async () => JSON.stringify(body),
  } as unknown as Response;
}

function textResponse(status: number, body: string): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    text: async () => body,
  } as unknown as Response;
}

export interface Step {
  request: { bid: string; move: string };
  response: { schema: number; round: unknown; state: any };
}

/**
 * Replays the scripted player-2 session: hints are accepted in order,
 * any other action half gets the recorded illegal-bid rejection.
 */
export class FakeServer {
  state = fixture("session_start.json");
  private cursor = 0;
  readonly steps: Step[] = fixture("steps.json");
  readonly upload = fixture("game_upload.json");
  readonly sessionId: string = this.state.id;

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const url = new URL(input, "http://fake");
    const path = url.pathname;

    if (method === "GET" && path === `/games/${this.upload.id}`) {
      return jsonResponse(200, this.upload);
    }
    if (method === "GET" && path === `/games/${this.upload.id}/thresholds`) {
      return jsonResponse(200, fixture("thresholds.json"));
    }
    if (method === "GET" && path === `/sessions/${this.sessionId}`) {
      return jsonResponse(200, this.state);
    }
    if (method === "GET" && path === `/sessions/${this.sessionId}/whatif`) {
      if (url.searchParams.get("bid") === "0") {
        return jsonResponse(200, fixture("whatif.json"));
      }
      return jsonResponse(400, {
        schema: 1,
        code: "invalid_bid",
        message: "unreadable bid literal",
      });
    }
    if (method === "GET" && path === `/sessions/${this.sessionId}/log`) {
      return textResponse(200, fixtureText("log.ndjson"));
    }
    if (method === "POST" && path === `/sessions/${this.sessionId}/bid`) {
      if (this.state.over) {
        return jsonResponse(409, {
          schema: 1,
          code: "session_over",
          message: "the session is over",
        });
      }
      const half = JSON.parse(String(init?.body ?? "{}"));
      const step = this.steps[this.cursor];
      if (
        step &&
        half.bid === step.request.bid &&
        half.move === step.request.move
      ) {
        this.cursor += 1;
        this.state = step.response.state;
        return jsonResponse(200, step.response);
      }
      return jsonResponse(400, fixture("illegal_bid.json"));
    }
    return jsonResponse(404, {
      schema: 1,
      code: "not_found",
      message: `no route for ${method} ${path}`,
    });
  };
}
