/**
 * Client-side session state. Holds the latest server view, applies an
 * optimistic echo while a command is in flight, and rolls back to the
 * server's truth on error. At most one mutation is in flight at a time;
 * reads (event polls, view fetches) are unrestricted.
 */
import { ApiClient, ApiError } from "./client.js";
import { Command, SessionView, ViewDelta } from "./types.js";

export interface Toast {
  level: "info" | "error";
  code: string;
  message: string;
}

export type Listener = (controller: SessionController) => void;

function applyDelta(view: SessionView, delta: ViewDelta): SessionView {
  const next: SessionView = {
    ...view,
    document: delta.document ?? view.document,
    tree: delta.tree ?? view.tree,
    tracker: delta.tracker ?? view.tracker,
    event_count: view.event_count + 1,
  };
  if (delta.variation) {
    next.variations = { ...view.variations, [delta.variation.variation_id]: delta.variation };
  }
  return next;
}

/** Local echo of a command, shown until the server confirms or rejects. */
function optimisticEcho(view: SessionView, command: Command): SessionView {
  switch (command.kind) {
    case "highlight":
      return {
        ...view,
        document: {
          ...view.document,
          active_span: {
            start: command.start,
            end: command.end,
            revision: view.document.revision,
          },
          selected_part: view.document.text.slice(command.start, command.end),
        },
      };
    case "select":
    case "deselect": {
      const on = command.kind === "select";
      return {
        ...view,
        tree: {
          ...view.tree,
          nodes: view.tree.nodes.map((n) =>
            n.node_id === command.node_id ? { ...n, selected: on } : n,
          ),
        },
      };
    }
    case "activate":
      return { ...view, tracker: { ...view.tracker, active: command.variation_id } };
    default:
      // Generated content is unknowable locally; wait for the server.
      return view;
  }
}

export class SessionController {
  private _view: SessionView;
  private _busy = false;
  private _toasts: Toast[] = [];
  private _seenOrdinal: number;
  private listeners: Listener[] = [];

  constructor(
    private readonly client: ApiClient,
    initialView: SessionView,
  ) {
    this._view = initialView;
    this._seenOrdinal = initialView.event_count;
  }

  static async open(client: ApiClient, text: string, policy?: { mode: "full" | "baseline" }) {
    return new SessionController(client, await client.createSession(text, policy));
  }

  get view(): SessionView {
    return this._view;
  }

  get busy(): boolean {
    return this._busy;
  }

  get toasts(): readonly Toast[] {
    return this._toasts;
  }

  get seenOrdinal(): number {
    return this._seenOrdinal;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  dismissToasts(): void {
    this._toasts = [];
    this.emit();
  }

  /**
   * Send one command. The optimistic echo renders immediately; the server's
   * delta (or the pre-command view, on error) always wins.
   */
  async send(command: Command): Promise<boolean> {
    if (this._busy) return false;
    const before = this._view;
    this._busy = true;
    this._view = optimisticEcho(before, command);
    this.emit();
    try {
      const result = await this.client.command(before.session_id, command);
      this._view = applyDelta(before, result.view);
      this._seenOrdinal = result.event.ordinal;
      for (const notice of result.notices) {
        this._toasts.push({ level: "info", code: notice, message: notice });
      }
      return true;
    } catch (error) {
      this._view = before; // rollback the echo
      if (error instanceof ApiError) {
        this._toasts.push({ level: "error", code: error.code, message: error.message });
        return false;
      }
      throw error;
    } finally {
      this._busy = false;
      this.emit();
    }
  }

  /**
   * Incremental reconciliation: if the server log has advanced past what we
   * have seen (another tab, a reconnect), re-adopt the full server view.
   */
  async poll(): Promise<boolean> {
    const page = await this.client.events(this._view.session_id, this._seenOrdinal);
    if (page.latest <= this._seenOrdinal) return false;
    this._view = await this.client.getView(this._view.session_id);
    this._seenOrdinal = page.latest;
    this.emit();
    return true;
  }
}
