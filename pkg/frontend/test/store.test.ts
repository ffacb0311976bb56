import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike } from "../src/client.js";
import { SessionController } from "../src/store.js";
import { makeView, node } from "./fixtures.js";

interface Scripted {
  status: number;
  body: unknown;
}

/** fetch stand-in fed from a queue, recording every request it serves. */
function scriptedFetch(queue: Scripted[], log: { url: string; body?: string }[] = []): FetchLike {
  return async (url, init) => {
    log.push({ url, body: init?.body });
    const next = queue.shift();
    if (!next) throw new Error(`unexpected request: ${url}`);
    return { status: next.status, json: async () => next.body };
  };
}

function eventBody(ordinal: number, kind: string) {
  return { v: 1, ordinal, kind, payload: {}, at: 0 };
}

describe("SessionController.send", () => {
  it("adopts the server delta and surfaces notices as toasts", async () => {
    const queue: Scripted[] = [
      {
        status: 200,
        body: {
          event: eventBody(2, "edited"),
          view: {
            document: {
              doc_id: "doc1",
              text: "ABXDEF",
              revision: 0,
              revision_count: 1,
              active_span: null,
              selected_part: null,
            },
          },
          notices: ["SpanInvalidated"],
        },
      },
    ];
    const controller = new SessionController(
      new ApiClient("http://x", { fetchImpl: scriptedFetch(queue) }),
      makeView(),
    );
    const ok = await controller.send({ kind: "edit", at: 2, delete_len: 1, insert: "X" });
    expect(ok).toBe(true);
    expect(controller.view.document.text).toBe("ABXDEF");
    expect(controller.view.event_count).toBe(2);
    expect(controller.toasts).toEqual([
      { level: "info", code: "SpanInvalidated", message: "SpanInvalidated" },
    ]);
  });

  it("shows an optimistic selection echo, then rolls back on a server error", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    const fetchImpl: FetchLike = async () => {
      await gate;
      return {
        status: 409,
        json: async () => ({ error: { code: "SELECTION_CAP", message: "cap" } }),
      };
    };
    const view = makeView({
      tree: {
        policy: { mode: "baseline", root_count: 8, sub_count: 4, max_depth: 2 },
        roots: ["d1"],
        selection_order: [],
        next_id: 2,
        nodes: [node({ node_id: "d1", label: "Plot" })],
      },
    });
    const controller = new SessionController(
      new ApiClient("http://x", { fetchImpl }),
      view,
    );
    const pending = controller.send({ kind: "select", node_id: "d1" });
    // echo is visible while the command is in flight
    expect(controller.busy).toBe(true);
    expect(controller.view.tree.nodes[0]!.selected).toBe(true);
    release();
    expect(await pending).toBe(false);
    // rolled back to the pre-command view, with an error toast
    expect(controller.view).toEqual(view);
    expect(controller.toasts).toEqual([
      { level: "error", code: "SELECTION_CAP", message: "cap" },
    ]);
    expect(controller.busy).toBe(false);
  });

  it("refuses a second mutation while one is in flight", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    const fetchImpl: FetchLike = async () => {
      await gate;
      return {
        status: 200,
        json: async () => ({ event: eventBody(2, "probed"), view: {}, notices: [] }),
      };
    };
    const controller = new SessionController(
      new ApiClient("http://x", { fetchImpl }),
      makeView({
        document: {
          doc_id: "doc1",
          text: "ABCDEF",
          revision: 0,
          revision_count: 1,
          active_span: { start: 0, end: 2, revision: 0 },
          selected_part: "AB",
        },
      }),
    );
    const first = controller.send({ kind: "probe" });
    expect(await controller.send({ kind: "probe" })).toBe(false);
    release();
    expect(await first).toBe(true);
  });
});

describe("SessionController.poll", () => {
  it("is a no-op when the log has not advanced", async () => {
    const log: { url: string }[] = [];
    const queue: Scripted[] = [{ status: 200, body: { events: [], latest: 1 } }];
    const controller = new SessionController(
      new ApiClient("http://x", { fetchImpl: scriptedFetch(queue, log) }),
      makeView(),
    );
    expect(await controller.poll()).toBe(false);
    expect(log.map((l) => l.url)).toEqual(["http://x/sessions/s1/events?since=1"]);
  });

  it("re-adopts the full server view when new events exist", async () => {
    const serverView = makeView({ event_count: 3 });
    serverView.document.text = "REWRITTEN";
    const queue: Scripted[] = [
      { status: 200, body: { events: [eventBody(2, "edited"), eventBody(3, "edited")], latest: 3 } },
      { status: 200, body: serverView },
    ];
    const controller = new SessionController(
      new ApiClient("http://x", { fetchImpl: scriptedFetch(queue) }),
      makeView(),
    );
    expect(await controller.poll()).toBe(true);
    expect(controller.view.document.text).toBe("REWRITTEN");
    expect(controller.seenOrdinal).toBe(3);
  });
});
