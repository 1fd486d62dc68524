import { GENRES, Genre } from "./api.js";
import { GameController, GameState } from "./game.js";

const el = <T extends HTMLElement>(tag: string, className?: string, text?: string): T => {
  const node = document.createElement(tag) as T;
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
};

/** Builds the single-page UI and returns the render function to hook into
 *  the controller's state listener. */
export const mountApp = (
  root: HTMLElement,
  controller: GameController
): ((state: GameState) => void) => {
  root.innerHTML = "";

  const heading = el<HTMLHeadingElement>("h1", "title", "Riddle Play");
  const picker = el<HTMLDivElement>("div", "genre-picker");
  const genreSelect = el<HTMLSelectElement>("select", "genre-select");
  for (const genre of GENRES) {
    const option = el<HTMLOptionElement>("option", undefined, genre);
    option.value = genre;
    genreSelect.appendChild(option);
  }
  const startButton = el<HTMLButtonElement>("button", "start", "New riddle");
  picker.append(genreSelect, startButton);

  const clueList = el<HTMLOListElement>("ol", "clues");
  const nextClueButton = el<HTMLButtonElement>("button", "next-clue", "Next clue");
  const message = el<HTMLParagraphElement>("p", "message");
  const guessForm = el<HTMLFormElement>("form", "guess-form");
  const guessInput = el<HTMLInputElement>("input", "guess-input");
  guessInput.placeholder = "Your guess";
  const guessButton = el<HTMLButtonElement>("button", "guess", "Guess");
  guessButton.type = "submit";
  const revealButton = el<HTMLButtonElement>("button", "reveal", "Give up and reveal");
  guessForm.append(guessInput, guessButton);
  const answersPanel = el<HTMLDivElement>("div", "answers hidden");

  root.append(
    heading, picker, clueList, nextClueButton, message, guessForm, revealButton, answersPanel
  );

  const render = (state: GameState): void => {
    clueList.innerHTML = "";
    for (const clue of controller.visibleClues()) {
      clueList.appendChild(el<HTMLLIElement>("li", "clue", clue));
    }
    const playing = state.phase === "playing";
    const view = state.view;
    nextClueButton.disabled = !playing || !view || view.revealCursor >= view.clues.length;
    guessInput.disabled = !playing;
    guessButton.disabled = !playing;
    revealButton.disabled = !playing;

    message.textContent = state.message;
    message.className = `message tone-${state.messageTone}`;

    answersPanel.innerHTML = "";
    if (state.answers) {
      answersPanel.classList.remove("hidden");
      answersPanel.appendChild(
        el<HTMLParagraphElement>("p", "intended", `Intended answer: ${state.intended ?? "?"}`)
      );
      answersPanel.appendChild(
        el<HTMLParagraphElement>("p", undefined, "Everything that fits the clues:")
      );
      const list = el<HTMLUListElement>("ul", "answer-list");
      for (const answer of state.answers) {
        list.appendChild(el<HTMLLIElement>("li", "answer", answer));
      }
      answersPanel.appendChild(list);
    } else {
      answersPanel.classList.add("hidden");
    }
  };

  startButton.addEventListener("click", () => {
    void controller.start(genreSelect.value as Genre);
  });
  nextClueButton.addEventListener("click", () => controller.nextClue());
  guessForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = guessInput.value;
    if (!text.trim()) {
      message.textContent = "Type a guess first.";
      message.className = "message tone-error";
      return;
    }
    guessInput.value = "";
    void controller.submitGuess(text);
  });
  revealButton.addEventListener("click", () => {
    void controller.reveal();
  });

  render(controller.snapshot());
  return render;
};
