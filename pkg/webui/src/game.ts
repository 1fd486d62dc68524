import { Genre, GuessResult, RevealResult, ServiceClient, ServiceError, Verdict } from "./api.js";

export type ClientRiddleView = {
  id: string;
  genre: Genre;
  clues: string[];
  revealCursor: number; // how many clues are visible, starts at 1
};

export type GuessRecord = {
  text: string;
  verdict: Verdict;
};

export type ClientSession = {
  sessionId: string;
  riddleId: string;
  guesses: GuessRecord[];
  wrongCount: number;
  revealed: boolean;
};

export type GamePhase = "idle" | "loading" | "playing" | "solved" | "revealed" | "error";

export type GameState = {
  phase: GamePhase;
  view: ClientRiddleView | null;
  session: ClientSession | null;
  message: string;
  messageTone: "neutral" | "success" | "also-correct" | "hint" | "wrong" | "error";
  answers: string[] | null;
  intended: string | null;
};

type StateListener = (state: GameState) => void;

const freshState = (): GameState => ({
  phase: "idle",
  view: null,
  session: null,
  message: "",
  messageTone: "neutral",
  answers: null,
  intended: null,
});

const randomSessionId = (): string => `web-${Math.random().toString(36).slice(2, 10)}`;

/**
 * Single-session play state machine. Every transition after start() is
 * driven by a server verdict or reveal response; the client never decides
 * correctness on its own.
 */
export class GameController {
  private state: GameState = freshState();

  public constructor(
    private readonly api: Pick<ServiceClient, "createRiddle" | "submitGuess" | "reveal">,
    private readonly listener: StateListener,
    private readonly makeSessionId: () => string = randomSessionId
  ) {}

  public snapshot(): GameState {
    return this.state;
  }

  public visibleClues(): string[] {
    const view = this.state.view;
    return view ? view.clues.slice(0, view.revealCursor) : [];
  }

  public async start(genre: Genre, concept?: string, seed?: number): Promise<void> {
    this.update({ ...freshState(), phase: "loading", message: "Fetching a riddle..." });
    try {
      const riddle = await this.api.createRiddle({ genre, concept, seed });
      this.update({
        ...freshState(),
        phase: "playing",
        view: { id: riddle.id, genre: riddle.genre, clues: riddle.clues, revealCursor: 1 },
        session: {
          sessionId: this.makeSessionId(),
          riddleId: riddle.id,
          guesses: [],
          wrongCount: 0,
          revealed: false,
        },
        message: "First clue revealed. Guess, or ask for the next clue.",
      });
    } catch (error) {
      this.fail(error);
    }
  }

  /** Shows one more clue; capped at the riddle's clue count. */
  public nextClue(): void {
    const view = this.state.view;
    if (!view || this.state.phase !== "playing") {
      return;
    }
    if (view.revealCursor < view.clues.length) {
      this.update({
        ...this.state,
        view: { ...view, revealCursor: view.revealCursor + 1 },
        message: "",
        messageTone: "neutral",
      });
    }
  }

  /** Empty input never reaches the service. */
  public async submitGuess(text: string): Promise<void> {
    const { view, session } = this.state;
    if (!view || !session || this.state.phase !== "playing") {
      return;
    }
    const trimmed = text.trim();
    if (!trimmed) {
      this.update({
        ...this.state,
        message: "Type a guess first.",
        messageTone: "error",
      });
      return;
    }
    let result: GuessResult;
    try {
      result = await this.api.submitGuess(view.id, session.sessionId, trimmed);
    } catch (error) {
      this.fail(error);
      return;
    }
    const nextSession: ClientSession = {
      ...session,
      guesses: [...session.guesses, { text: trimmed, verdict: result.verdict }],
      wrongCount: result.wrong_count,
      revealed: result.revealed,
    };
    if (result.verdict === "intended") {
      await this.finish("solved", nextSession, `Yes: "${trimmed}" is the intended answer!`);
      return;
    }
    if (result.revealed) {
      await this.finish("revealed", nextSession, "Out of guesses. Here is the full answer set.");
      return;
    }
    if (result.verdict === "alternative-valid") {
      this.update({
        ...this.state,
        session: nextSession,
        message: `"${trimmed}" also fits every clue. Can you find the intended answer?`,
        messageTone: "also-correct",
      });
    } else if (result.verdict === "abstraction-merge") {
      this.update({
        ...this.state,
        session: nextSession,
        message: `"${trimmed}" is a whole category. Be more specific.`,
        messageTone: "hint",
      });
    } else {
      this.update({
        ...this.state,
        session: nextSession,
        message: `"${trimmed}" does not fit the clues. Wrong guesses: ${result.wrong_count}.`,
        messageTone: "wrong",
      });
    }
  }

  public async reveal(): Promise<void> {
    const { view, session } = this.state;
    if (!view || !session) {
      return;
    }
    await this.finish("revealed", { ...session, revealed: true }, "Here is the full answer set.");
  }

  private async finish(
    phase: "solved" | "revealed",
    session: ClientSession,
    message: string
  ): Promise<void> {
    const view = this.state.view;
    if (!view) {
      return;
    }
    let revealResult: RevealResult;
    try {
      revealResult = await this.api.reveal(view.id, session.sessionId);
    } catch (error) {
      this.fail(error);
      return;
    }
    this.update({
      phase,
      view: { ...view, revealCursor: view.clues.length },
      session: { ...session, revealed: true },
      message,
      messageTone: phase === "solved" ? "success" : "neutral",
      answers: revealResult.answers,
      intended: revealResult.intended,
    });
  }

  private fail(error: unknown): void {
    const detail =
      error instanceof ServiceError ? error.message : "Unexpected error talking to the service.";
    this.update({
      ...this.state,
      phase: this.state.view ? this.state.phase : "error",
      message: detail,
      messageTone: "error",
    });
  }

  private update(state: GameState): void {
    this.state = state;
    this.listener(state);
  }
}
