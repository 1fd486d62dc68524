export type ClientConfig = {
  baseUrl: string;
};

const DEFAULT_BASE_URL = "http://127.0.0.1:8000";

type ConfiguredGlobal = {
  RIDDLE_SERVICE_URL?: string;
};

/** Service base URL: page-level override first, then the local default. */
export const resolveConfig = (): ClientConfig => {
  const override = (globalThis as ConfiguredGlobal).RIDDLE_SERVICE_URL;
  const baseUrl = typeof override === "string" && override.length > 0 ? override : DEFAULT_BASE_URL;
  return { baseUrl: baseUrl.replace(/\/+$/, "") };
};
