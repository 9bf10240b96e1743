// Reading-session controller: navigation bound to the server cursor,
// scaffold toggles, connection-loss recovery. All content comes from the
// service; toggling performs no client-side re-inference.

import { ApiClient } from "./api.js";
import { sentenceViewHtml } from "./render.js";
import type { SentenceResponse, SessionInfo, ViewSettings } from "./types.js";

export interface ReaderState {
  session: SessionInfo | null;
  index: number;
  total: number;
  html: string;
  atStart: boolean;
  atEnd: boolean;
  connectionLost: boolean;
}

export class ReaderController {
  private state: ReaderState = {
    session: null,
    index: 0,
    total: 0,
    html: "",
    atStart: true,
    atEnd: true,
    connectionLost: false,
  };

  constructor(
    private readonly api: ApiClient,
    private readonly onRender: (state: ReaderState) => void = () => {},
  ) {}

  get current(): ReaderState {
    return this.state;
  }

  async start(text: string, language?: string): Promise<void> {
    const session = await this.api.createSession(text, language);
    this.state.session = session;
    this.state.total = session.length;
    await this.show(session.cursor);
  }

  /** Rejoin an existing session (e.g. session id restored from the URL). */
  async resume(sessionId: string): Promise<void> {
    const session = await this.api.getSession(sessionId);
    this.state.session = session;
    this.state.total = session.length;
    await this.show(session.cursor);
  }

  async show(index: number): Promise<void> {
    if (!this.state.session) throw new Error("no active session");
    let response: SentenceResponse;
    try {
      response = await this.api.getSentence(this.state.session.id, index, true);
    } catch (error) {
      if (error instanceof TypeError) {
        // fetch network failure: keep position, surface the retry banner
        this.state.connectionLost = true;
        this.onRender(this.state);
        return;
      }
      throw error;
    }
    this.state.connectionLost = false;
    this.state.index = response.index;
    this.state.total = response.total;
    this.state.atStart = response.index === 0;
    this.state.atEnd = response.index >= response.total - 1;
    this.state.html = sentenceViewHtml(
      response.sentence,
      {
        language: this.state.session.language,
        index: response.index,
        total: response.total,
      },
      (id) => this.api.imageUrl(id),
    );
    this.onRender(this.state);
  }

  async retry(): Promise<void> {
    await this.show(this.state.index);
  }

  async next(): Promise<void> {
    if (!this.state.atEnd) await this.show(this.state.index + 1);
  }

  async previous(): Promise<void> {
    if (!this.state.atStart) await this.show(this.state.index - 1);
  }

  /** Toggle a scaffold layer server-side, then re-render this sentence. */
  async toggle(setting: keyof ViewSettings, value: boolean): Promise<void> {
    if (!this.state.session) throw new Error("no active session");
    const updated = await this.api.patchSettings(this.state.session.id, {
      [setting]: value,
    });
    this.state.session.settings = updated;
    await this.show(this.state.index);
  }
}
