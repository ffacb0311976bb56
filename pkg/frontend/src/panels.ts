/**
 * Pure view-model builders for the four panels: story board, shopping-cart
 * direction tree, example box, and mutant tracker. Everything here is a
 * function of the fetched session view (plus the in-flight flag), so panels
 * can be rendered by any DOM layer and unit-tested without a browser.
 *
 * Ablated (baseline) affordances are rendered disabled, not hidden.
 */
import { DirectionNode, SessionView, Variation } from "./types.js";

// --- story board ------------------------------------------------------------

export interface StoryboardModel {
  text: string;
  revision: number;
  segments: { text: string; highlighted: boolean }[];
  editable: boolean;
}

export function storyboardPanel(view: SessionView, busy = false): StoryboardModel {
  const { text, active_span: span, revision } = view.document;
  const segments =
    span === null
      ? [{ text, highlighted: false }]
      : [
          { text: text.slice(0, span.start), highlighted: false },
          { text: text.slice(span.start, span.end), highlighted: true },
          { text: text.slice(span.end), highlighted: false },
        ].filter((s) => s.text.length > 0);
  return { text, revision, segments, editable: !busy };
}

/**
 * Map a drag selection (anchor/focus offsets in scalar values, either order)
 * to the half-open span the highlight command expects.
 */
export function dragToSpan(anchor: number, focus: number): { start: number; end: number } {
  return anchor <= focus ? { start: anchor, end: focus } : { start: focus, end: anchor };
}

// --- shopping cart ----------------------------------------------------------

export interface CartRow {
  nodeId: string;
  label: string;
  origin: string;
  depth: number;
  indent: number;
  selected: boolean;
  /** Per-node \faPlusCircle; disabled (never hidden) when ablated or spent. */
  expand: { enabled: boolean; reason: "ok" | "busy" | "depth-cap" | "already-expanded" };
  /** Per-node \faCheckSquare. */
  checkbox: { enabled: boolean; reason: "ok" | "busy" | "selection-cap" };
}

export interface CartModel {
  probeEnabled: boolean;
  addEnabled: boolean;
  rows: CartRow[];
  selectedCount: number;
}

function* walk(view: SessionView): Generator<DirectionNode> {
  const byId = new Map(view.tree.nodes.map((n) => [n.node_id, n]));
  function* visit(id: string): Generator<DirectionNode> {
    const node = byId.get(id);
    if (!node) return;
    yield node;
    for (const child of node.children) yield* visit(child);
  }
  for (const root of view.tree.roots) yield* visit(root);
}

export function cartPanel(view: SessionView, busy = false): CartModel {
  const policy = view.tree.policy;
  const selectedCount = view.tree.nodes.filter((n) => n.selected).length;
  const capReached =
    policy.mode === "baseline" && selectedCount >= 1;
  const rows: CartRow[] = [];
  for (const node of walk(view)) {
    const atDepthCap = policy.max_depth !== null && node.depth >= policy.max_depth;
    const expandReason = busy
      ? "busy"
      : node.children.length > 0
        ? "already-expanded"
        : atDepthCap
          ? "depth-cap"
          : "ok";
    const checkboxReason = busy
      ? "busy"
      : !node.selected && capReached
        ? "selection-cap"
        : "ok";
    rows.push({
      nodeId: node.node_id,
      label: node.label,
      origin: node.origin,
      depth: node.depth,
      indent: node.depth - 1,
      selected: node.selected,
      expand: { enabled: expandReason === "ok", reason: expandReason },
      checkbox: { enabled: checkboxReason === "ok", reason: checkboxReason },
    });
  }
  return {
    probeEnabled: !busy && view.document.active_span !== null,
    addEnabled: !busy,
    rows,
    selectedCount,
  };
}

// --- example box + mutant tracker -------------------------------------------

export interface VariationSegment {
  text: string;
  emphasized: boolean;
}

/**
 * Split variation text at its emphasis boundaries. Concatenating the
 * segments reproduces the text exactly, so copy yields plain prose.
 */
export function segmentVariation(variation: Variation): VariationSegment[] {
  const spans = [...variation.emphasized].sort((a, b) => a[0] - b[0]);
  const segments: VariationSegment[] = [];
  let cursor = 0;
  for (const [start, end] of spans) {
    if (start > cursor) {
      segments.push({ text: variation.text.slice(cursor, start), emphasized: false });
    }
    segments.push({ text: variation.text.slice(start, end), emphasized: true });
    cursor = end;
  }
  if (cursor < variation.text.length) {
    segments.push({ text: variation.text.slice(cursor), emphasized: false });
  }
  return segments;
}

export interface ExampleBoxModel {
  chips: { label: string; active: boolean }[];
  active: {
    label: string;
    directionPaths: string[];
    segments: VariationSegment[];
    tooLong: boolean;
    noEmphasis: boolean;
  } | null;
  synthesize: { enabled: boolean; reason: "ok" | "busy" | "no-selection" };
  accept: { enabled: boolean; reason: "ok" | "busy" | "no-active" | "stale" };
}

export function examplesPanel(view: SessionView, busy = false): ExampleBoxModel {
  const activeId = view.tracker.active;
  const variation = activeId === null ? undefined : view.variations[activeId];
  const anySelected = view.tree.nodes.some((n) => n.selected);
  const stale =
    variation !== undefined && variation.source_revision !== view.document.revision;
  return {
    chips: view.tracker.entries.map((label) => ({ label, active: label === activeId })),
    active: variation
      ? {
          label: variation.label,
          directionPaths: [...variation.direction_paths],
          segments: segmentVariation(variation),
          tooLong: variation.validation.too_long,
          noEmphasis: variation.validation.no_emphasis,
        }
      : null,
    synthesize: {
      enabled: !busy && anySelected,
      reason: busy ? "busy" : anySelected ? "ok" : "no-selection",
    },
    accept: {
      enabled: !busy && variation !== undefined && !stale,
      reason: busy ? "busy" : variation === undefined ? "no-active" : stale ? "stale" : "ok",
    },
  };
}
