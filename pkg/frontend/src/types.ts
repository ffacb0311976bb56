/**
 * Wire types for the session service, validated at the boundary with zod so a
 * drifting server surfaces as a loud schema error instead of a silent NaN.
 */
import { z } from "zod";

export const SpanSchema = z.object({
  start: z.number().int().nonnegative(),
  end: z.number().int().nonnegative(),
  revision: z.number().int().nonnegative(),
});
export type Span = z.infer<typeof SpanSchema>;

export const DocumentViewSchema = z.object({
  doc_id: z.string(),
  text: z.string(),
  revision: z.number().int().nonnegative(),
  revision_count: z.number().int().positive(),
  active_span: SpanSchema.nullable(),
  selected_part: z.string().nullable(),
});
export type DocumentView = z.infer<typeof DocumentViewSchema>;

export const PolicySchema = z.object({
  mode: z.enum(["full", "baseline"]),
  root_count: z.number().int().positive(),
  sub_count: z.number().int().positive(),
  max_depth: z.number().int().positive().nullable(),
});
export type Policy = z.infer<typeof PolicySchema>;

export const DirectionNodeSchema = z.object({
  node_id: z.string(),
  label: z.string(),
  origin: z.string(),
  parent: z.string().nullable(),
  children: z.array(z.string()),
  depth: z.number().int().positive(),
  selected: z.boolean(),
});
export type DirectionNode = z.infer<typeof DirectionNodeSchema>;

export const TreeViewSchema = z.object({
  policy: PolicySchema,
  roots: z.array(z.string()),
  selection_order: z.array(z.string()),
  next_id: z.number().int(),
  nodes: z.array(DirectionNodeSchema),
});
export type TreeView = z.infer<typeof TreeViewSchema>;

export const VariationSchema = z.object({
  variation_id: z.string(),
  label: z.string(),
  direction_paths: z.array(z.string()),
  text: z.string(),
  emphasized: z.array(z.tuple([z.number().int(), z.number().int()])),
  source_span: SpanSchema,
  source_revision: z.number().int().nonnegative(),
  validation: z.object({ too_long: z.boolean(), no_emphasis: z.boolean() }),
  created_at: z.number(),
  lenient_notice: z.boolean(),
});
export type Variation = z.infer<typeof VariationSchema>;

export const TrackerSchema = z.object({
  entries: z.array(z.string()),
  active: z.string().nullable(),
});
export type Tracker = z.infer<typeof TrackerSchema>;

export const SessionViewSchema = z.object({
  session_id: z.string(),
  document: DocumentViewSchema,
  tree: TreeViewSchema,
  tracker: TrackerSchema,
  variations: z.record(VariationSchema),
  policy: PolicySchema,
  event_count: z.number().int().positive(),
});
export type SessionView = z.infer<typeof SessionViewSchema>;

export const SessionEventSchema = z.object({
  v: z.number().int(),
  ordinal: z.number().int().positive(),
  kind: z.string(),
  payload: z.record(z.unknown()),
  at: z.number(),
});
export type SessionEvent = z.infer<typeof SessionEventSchema>;

/** Commands return only the slices of the view they changed. */
export const ViewDeltaSchema = z.object({
  document: DocumentViewSchema.optional(),
  tree: TreeViewSchema.optional(),
  tracker: TrackerSchema.optional(),
  variation: VariationSchema.optional(),
});
export type ViewDelta = z.infer<typeof ViewDeltaSchema>;

export const CommandResultSchema = z.object({
  event: SessionEventSchema,
  view: ViewDeltaSchema,
  notices: z.array(z.string()),
});
export type CommandResult = z.infer<typeof CommandResultSchema>;

export const EventsPageSchema = z.object({
  events: z.array(SessionEventSchema),
  latest: z.number().int().nonnegative(),
});
export type EventsPage = z.infer<typeof EventsPageSchema>;

export const ErrorBodySchema = z.object({
  error: z.object({ code: z.string(), message: z.string() }),
});

/** One kind-tagged mutation, mirroring the service's command dispatch. */
export type Command =
  | { kind: "highlight"; start: number; end: number }
  | { kind: "edit"; at: number; delete_len: number; insert: string }
  | { kind: "probe"; allow_reprobe?: boolean }
  | { kind: "expand"; node_id: string }
  | { kind: "add_manual"; parent?: string | null; label: string }
  | { kind: "select"; node_id: string }
  | { kind: "deselect"; node_id: string }
  | { kind: "synthesize" }
  | { kind: "activate"; variation_id: string }
  | { kind: "accept" };
