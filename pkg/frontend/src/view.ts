// HTML fragments for the editor panels. Numbers render through String() so
// the text on screen is the exact float the service sent, no rounding.

import type { EditorState } from "./state.js";
import { SLIDER_MAX, SLIDER_MIN } from "./state.js";

export function formatNumber(value: number | null | undefined): string {
  return value === null || value === undefined ? "–" : String(value);
}

export function scoreTableHtml(state: EditorState): string {
  const rows = state.attributes
    .map(
      (a) =>
        `<tr><td>${a}</td><td class="num" data-score="${a}">${formatNumber(
          state.scores[a],
        )}</td><td class="num" data-distance="${a}">${formatNumber(
          state.distances[a],
        )}</td></tr>`,
    )
    .join("");
  return (
    "<table><thead><tr><th>attribute</th><th>score</th><th>distance</th></tr></thead>" +
    `<tbody>${rows}</tbody></table>`
  );
}

export function cosineListHtml(state: EditorState): string {
  if (!state.resolvedCosines) return "<p class=\"muted\">no edit applied yet</p>";
  const rows = Object.entries(state.resolvedCosines)
    .map(([name, value]) => `<li>${name}: <span class="num">${formatNumber(value)}</span></li>`)
    .join("");
  return `<p>effective direction: ${state.resolvedLabel ?? ""}</p><ul>${rows}</ul>`;
}

export function sliderRowHtml(state: EditorState, attribute: string): string {
  const value = state.sliders[attribute] ?? 0;
  return (
    `<div class="slider-row" data-attr="${attribute}">` +
    `<label>${attribute}</label>` +
    `<input type="range" min="${SLIDER_MIN}" max="${SLIDER_MAX}" step="0.25" ` +
    `value="${value}" data-slider="${attribute}">` +
    `<span class="num" data-alpha="${attribute}">${formatNumber(value)}</span>` +
    `<label class="cond"><input type="checkbox" data-condition="${attribute}"` +
    `${state.conditions[attribute] ? " checked" : ""}> hold</label>` +
    "</div>"
  );
}

export function bannerHtml(state: EditorState): string {
  const parts: string[] = [];
  if (state.banner) parts.push(`<div class="banner error">${state.banner}</div>`);
  if (state.warning) parts.push(`<div class="banner warn">${state.warning}</div>`);
  return parts.join("");
}

export function sessionLineHtml(state: EditorState): string {
  return (
    `seed <span class="num">${formatNumber(state.seed)}</span> · ` +
    `history <span class="num">${state.historyLength}</span> · ` +
    `space ${state.latent.length ? "Z" : "?"} · dim ${state.latent.length}`
  );
}
