/** Browser console wiring: DOM in, tool calls out, view from the event stream. */

import { SessionClient, ConnectionState } from "./protocol.js";
import { SessionView, acceptsInput, applyEvent, initialView } from "./state.js";
import { PanoramaViewer } from "./viewer.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const transcriptBox = el<HTMLDivElement>("transcript");
const stateBadge = el<HTMLSpanElement>("state-badge");
const connBanner = el<HTMLDivElement>("connection-banner");
const inputBox = el<HTMLInputElement>("user-input");
const sendButton = el<HTMLButtonElement>("send");
const optionsBox = el<HTMLDivElement>("coach-options");
const objectsBox = el<HTMLDivElement>("object-panel");
const framesGrid = el<HTMLDivElement>("frames-grid");
const panoStrip = el<HTMLImageElement>("pano-strip");
const tickerBox = el<HTMLUListElement>("audio-ticker");
const chimeDot = el<HTMLSpanElement>("chime-dot");

const viewer = new PanoramaViewer(el<HTMLCanvasElement>("pano-viewer"));

let view: SessionView = initialView("");
let client: SessionClient | null = null;

function httpBase(wsUrl: string): string {
  return wsUrl.replace(/^ws/, "http").replace(/\/ws$/, "");
}

let assetBase = "";

function render(): void {
  stateBadge.textContent = view.act ? `${view.stateName} (act ${view.act})` : view.stateName;

  transcriptBox.textContent = view.transcript.join("\n") + (view.transcript.length ? "\n" : "");
  transcriptBox.scrollTop = transcriptBox.scrollHeight;

  const enabled = acceptsInput(view);
  inputBox.disabled = !enabled;
  sendButton.disabled = !enabled;
  inputBox.placeholder = enabled
    ? "Speak to the room..."
    : `waiting (${view.stateName})`;

  optionsBox.replaceChildren();
  view.pendingOptions.forEach((text, i) => {
    const button = document.createElement("button");
    button.textContent = `${i + 1}. ${text}`;
    button.disabled = !enabled;
    button.onclick = () => void client?.chooseOption(i + 1);
    optionsBox.appendChild(button);
  });

  if (view.panoramaUrl) {
    const url = `${assetBase}/${view.panoramaUrl}`;
    if (panoStrip.dataset.url !== url) {
      panoStrip.dataset.url = url;
      panoStrip.src = url;
      viewer.show(url);
    }
  }

  framesGrid.replaceChildren();
  for (const [name, url] of Object.entries(view.projectorUrls)) {
    const cell = document.createElement("figure");
    const img = document.createElement("img");
    img.src = `${assetBase}/${url}`;
    const cap = document.createElement("figcaption");
    cap.textContent = name;
    cell.append(img, cap);
    framesGrid.appendChild(cell);
  }

  tickerBox.replaceChildren();
  for (const tick of [...view.audioTicker].reverse()) {
    const li = document.createElement("li");
    li.textContent = `#${tick.seq} ${tick.label}`;
    tickerBox.appendChild(li);
  }
}

function flashChime(): void {
  chimeDot.classList.remove("flash");
  void chimeDot.offsetWidth; // restart the animation
  chimeDot.classList.add("flash");
}

function showConnection(state: ConnectionState): void {
  connBanner.dataset.state = state;
  connBanner.textContent =
    state === "open" ? "connected" :
    state === "reconnecting" ? "connection lost - reconnecting..." :
    state === "connecting" ? "connecting..." : "disconnected";
}

async function loadObjectPanel(): Promise<void> {
  if (!client) return;
  const listing = await client.listObjects();
  objectsBox.replaceChildren();
  for (const name of listing.objects) {
    const card = document.createElement("div");
    card.className = "object-card";
    const img = document.createElement("img");
    img.src = `${assetBase}/${listing.mask_urls[name]}`;
    img.alt = `${name} mask`;
    const label = document.createElement("span");
    label.textContent = name;
    const button = document.createElement("button");
    button.textContent = "transform";
    button.onclick = () => {
      const target = window.prompt(`Turn the ${name} into...`);
      if (target) void client?.editObject(name, target).catch(showInputError);
    };
    card.append(img, label, button);
    objectsBox.appendChild(card);
  }
}

function showInputError(err: Error): void {
  const line = document.createElement("div");
  line.className = "server-note";
  line.textContent = err.message;
  transcriptBox.appendChild(line);
}

async function connect(): Promise<void> {
  const wsUrl = (el<HTMLInputElement>("server-url").value || "ws://127.0.0.1:8765/ws").trim();
  assetBase = httpBase(wsUrl);
  client?.close();
  client = new SessionClient(wsUrl);
  client.onConnectionState = showConnection;
  client.onEvent = (event) => {
    view = applyEvent(view, event);
    if (event.kind === "chime") flashChime();
    render();
  };
  client.connect();
  view = initialView("");
  render();
  const sessionId = await client.startSession();
  view.sessionId = sessionId;
  await loadObjectPanel();
  render();
}

sendButton.onclick = () => {
  const text = inputBox.value.trim();
  if (!text || !client) return;
  inputBox.value = "";
  void client.sendInput(text).catch(showInputError);
};
inputBox.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter") sendButton.click();
});
el<HTMLButtonElement>("connect").onclick = () => void connect();

// optional browser speech capture: dictation arrives as plain text input
const speechButton = el<HTMLButtonElement>("dictate");
const SpeechRec =
  (window as never as Record<string, undefined | (new () => never)>)["webkitSpeechRecognition"];
if (SpeechRec) {
  speechButton.onclick = () => {
    const rec = new SpeechRec() as unknown as {
      onresult: (ev: { results: ArrayLike<ArrayLike<{ transcript: string }>> }) => void;
      start: () => void;
    };
    rec.onresult = (ev) => {
      inputBox.value = ev.results[0][0].transcript;
      sendButton.click();
    };
    rec.start();
  };
} else {
  speechButton.disabled = true;
  speechButton.title = "speech capture not available in this browser";
}

render();
showConnection("closed");
