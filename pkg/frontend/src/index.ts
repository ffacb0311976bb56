export * from "./types.js";
export { ApiClient, ApiError } from "./client.js";
export type { ClientOptions, FetchLike } from "./client.js";
export { SessionController } from "./store.js";
export type { Toast } from "./store.js";
export {
  cartPanel,
  dragToSpan,
  examplesPanel,
  segmentVariation,
  storyboardPanel,
} from "./panels.js";
export type { CartModel, CartRow, ExampleBoxModel, StoryboardModel, VariationSegment } from "./panels.js";
export { renderCart, renderExampleBox, renderStoryboard } from "./render.js";
