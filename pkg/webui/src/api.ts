export const GENRES = ["descriptive", "metaphorical", "poetic", "humorous", "situational"] as const;
export type Genre = (typeof GENRES)[number];

export type Verdict = "intended" | "alternative-valid" | "abstraction-merge" | "invalid";

export type RiddleView = {
  id: string;
  genre: Genre;
  seed: number;
  clue_count: number;
  clues: string[];
};

export type GuessResult = {
  verdict: Verdict;
  wrong_count: number;
  revealed: boolean;
};

export type RevealResult = {
  intended: string;
  answers: string[];
};

export class ServiceError extends Error {
  public constructor(
    public readonly status: number,
    detail: string
  ) {
    super(detail);
  }
}

type CreateRiddleRequest = {
  genre: Genre;
  concept?: string;
  seed?: number;
};

export class ServiceClient {
  public constructor(
    private readonly baseUrl: string,
    private readonly fetcher: typeof fetch = fetch
  ) {}

  public async createRiddle(request: CreateRiddleRequest): Promise<RiddleView> {
    return this.send<RiddleView>("POST", "/riddles", request);
  }

  public async getRiddle(id: string): Promise<RiddleView> {
    return this.send<RiddleView>("GET", `/riddles/${encodeURIComponent(id)}`);
  }

  public async submitGuess(id: string, sessionId: string, text: string): Promise<GuessResult> {
    return this.send<GuessResult>("POST", `/riddles/${encodeURIComponent(id)}/guess`, {
      session_id: sessionId,
      text,
    });
  }

  public async reveal(id: string, sessionId: string): Promise<RevealResult> {
    return this.send<RevealResult>("POST", `/riddles/${encodeURIComponent(id)}/reveal`, {
      session_id: sessionId,
    });
  }

  private async send<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetcher(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (error) {
      throw new ServiceError(0, `service unreachable: ${String(error)}`);
    }
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        payload && typeof payload === "object" && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : `request failed with status ${response.status}`;
      throw new ServiceError(response.status, detail);
    }
    return payload as T;
  }
}
