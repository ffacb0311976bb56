/** Hand-built session views for browser-free panel tests. */
import { DirectionNode, Policy, SessionView, Variation } from "../src/types.js";

export const FULL_POLICY: Policy = {
  mode: "full",
  root_count: 8,
  sub_count: 4,
  max_depth: null,
};

export const BASELINE_POLICY: Policy = {
  mode: "baseline",
  root_count: 8,
  sub_count: 4,
  max_depth: 2,
};

export function node(partial: Partial<DirectionNode> & { node_id: string; label: string }): DirectionNode {
  return {
    origin: "generated",
    parent: null,
    children: [],
    depth: 1,
    selected: false,
    ...partial,
  };
}

export function makeView(overrides: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "s1",
    document: {
      doc_id: "doc1",
      text: "ABCDEF",
      revision: 0,
      revision_count: 1,
      active_span: null,
      selected_part: null,
      ...overrides.document,
    },
    tree: {
      policy: FULL_POLICY,
      roots: [],
      selection_order: [],
      next_id: 1,
      nodes: [],
      ...overrides.tree,
    },
    tracker: { entries: [], active: null, ...overrides.tracker },
    variations: overrides.variations ?? {},
    policy: overrides.policy ?? FULL_POLICY,
    event_count: overrides.event_count ?? 1,
  };
}

export function makeVariation(partial: Partial<Variation> = {}): Variation {
  return {
    variation_id: "M1",
    label: "M1",
    direction_paths: ["Theme"],
    text: "plain start emphasized middle plain end",
    emphasized: [[12, 28]],
    source_span: { start: 0, end: 6, revision: 0 },
    source_revision: 0,
    validation: { too_long: false, no_emphasis: false },
    created_at: 0,
    lenient_notice: false,
    ...partial,
  };
}
