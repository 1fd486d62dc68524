import { ServiceClient } from "./api.js";
import { resolveConfig } from "./config.js";
import { GameController, GameState } from "./game.js";
import { mountApp } from "./ui.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

let render: (state: GameState) => void = () => {};
const api = new ServiceClient(resolveConfig().baseUrl);
const controller = new GameController(api, (state) => render(state));
render = mountApp(root, controller);
