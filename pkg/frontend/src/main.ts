// DOM wiring for the single-page editor.

import { ApiClient, ApiError } from "./api.js";
import {
  applyEditResponse,
  applySampleResponse,
  clampAlpha,
  conditionSetFor,
  EditorState,
  initialState,
  sliderDelta,
  toggleCondition,
  withBanner,
} from "./state.js";
import { debounce, LatestWinsQueue, SupersededError } from "./queue.js";
import { bannerHtml, cosineListHtml, scoreTableHtml, sessionLineHtml, sliderRowHtml } from "./view.js";

// ?api=http://localhost:8787 points the editor at a service on another origin
const api = new ApiClient(new URLSearchParams(location.search).get("api") ?? "");
const queue = new LatestWinsQueue<void>();

let state: EditorState = initialState([]);

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function renderAll(): void {
  el("face").innerHTML = state.svg;
  el("scores").innerHTML = scoreTableHtml(state);
  el("cosines").innerHTML = cosineListHtml(state);
  el("banners").innerHTML = bannerHtml(state);
  el("session").innerHTML = sessionLineHtml(state);
  for (const attr of state.attributes) {
    const row = document.querySelector<HTMLInputElement>(`[data-slider="${attr}"]`);
    const label = document.querySelector<HTMLElement>(`[data-alpha="${attr}"]`);
    if (row && document.activeElement !== row) row.value = String(state.sliders[attr] ?? 0);
    if (label) label.textContent = String(state.sliders[attr] ?? 0);
  }
}

function surface(err: unknown): void {
  if (err instanceof SupersededError) return;
  const message = err instanceof ApiError ? err.message : String(err);
  state = withBanner(state, message);
  renderAll();
}

function gesture(attribute: string, rawAlpha: number): void {
  const { alpha, warned } = clampAlpha(rawAlpha);
  const delta = sliderDelta(state, attribute, alpha);
  if (delta === 0) return;
  const conditions = conditionSetFor(state, attribute);
  queue
    .submit(async () => {
      const payload = await api.edit(attribute, delta, conditions);
      state = applyEditResponse(state, attribute, alpha, payload, warned);
      renderAll();
    })
    .catch(surface);
}

const debouncedGesture = debounce(gesture, 120);

function buildSliders(): void {
  el("sliders").innerHTML = state.attributes.map((a) => sliderRowHtml(state, a)).join("");
  for (const attr of state.attributes) {
    const slider = document.querySelector<HTMLInputElement>(`[data-slider="${attr}"]`);
    slider?.addEventListener("input", () => debouncedGesture(attr, Number(slider.value)));
    const toggle = document.querySelector<HTMLInputElement>(`[data-condition="${attr}"]`);
    toggle?.addEventListener("change", () => {
      state = toggleCondition(state, attr);
    });
  }
}

function resetAndSample(seed?: number): void {
  queue
    .submit(async () => {
      const payload = await api.sample(seed);
      state = applySampleResponse(state, payload);
      renderAll();
    })
    .catch(surface);
}

async function boot(): Promise<void> {
  try {
    const info = await api.generator();
    state = initialState(info.attributes);
    buildSliders();
    el("sample").addEventListener("click", () => {
      const raw = (el("seed-input") as HTMLInputElement).value.trim();
      resetAndSample(raw === "" ? undefined : Number(raw));
    });
    resetAndSample(0);
  } catch (err) {
    surface(err);
  }
}

void boot();
