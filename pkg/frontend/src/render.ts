/**
 * Serializable HTML rendering of the panel view-models — enough to mount the
 * client with innerHTML and to assert, in tests, that emphasized phrases are
 * visually distinct without a browser.
 */
import { CartModel, ExampleBoxModel, StoryboardModel } from "./panels.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderStoryboard(model: StoryboardModel): string {
  const body = model.segments
    .map((s) =>
      s.highlighted
        ? `<mark class="highlight">${escapeHtml(s.text)}</mark>`
        : escapeHtml(s.text),
    )
    .join("");
  const editable = model.editable ? ' contenteditable="true"' : "";
  return `<section class="storyboard" data-revision="${model.revision}"${editable}>${body}</section>`;
}

export function renderCart(model: CartModel): string {
  const probe = `<button class="probe"${model.probeEnabled ? "" : " disabled"}>probe</button>`;
  const add = `<input class="add-direction"${model.addEnabled ? "" : " disabled"} placeholder="add direction">`;
  const rows = model.rows
    .map((row) => {
      const checkbox =
        `<input type="checkbox" data-node="${row.nodeId}"` +
        `${row.selected ? " checked" : ""}${row.checkbox.enabled ? "" : " disabled"}>`;
      const expand =
        `<button class="expand" data-node="${row.nodeId}"` +
        `${row.expand.enabled ? "" : " disabled"} data-reason="${row.expand.reason}">+</button>`;
      return (
        `<li style="margin-left:${row.indent}em" data-depth="${row.depth}">` +
        `${checkbox}<span class="label">${escapeHtml(row.label)}</span>${expand}</li>`
      );
    })
    .join("");
  return `<section class="cart">${probe}${add}<ul>${rows}</ul></section>`;
}

export function renderExampleBox(model: ExampleBoxModel): string {
  const chips = model.chips
    .map(
      (c) =>
        `<button class="chip${c.active ? " active" : ""}" data-label="${c.label}">${c.label}</button>`,
    )
    .join("");
  const body =
    model.active === null
      ? '<p class="empty">nothing synthesized yet</p>'
      : `<blockquote data-label="${model.active.label}">` +
        model.active.segments
          .map((s) =>
            s.emphasized ? `<strong>${escapeHtml(s.text)}</strong>` : escapeHtml(s.text),
          )
          .join("") +
        "</blockquote>";
  const synthesize = `<button class="synthesize"${model.synthesize.enabled ? "" : " disabled"}>synthesize</button>`;
  const accept = `<button class="accept"${model.accept.enabled ? "" : " disabled"} data-reason="${model.accept.reason}">accept</button>`;
  return `<section class="examples">${synthesize}<nav class="tracker">${chips}</nav>${body}${accept}</section>`;
}
