import { GameApi, ServiceError } from "./api.js";
import { GameController } from "./controller.js";
import { renderView } from "./render.js";

function el<T extends HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
}

const targets = {
    board: el<HTMLElement>("board") as unknown as SVGSVGElement,
    banner: el<HTMLElement>("banner"),
    history: el<HTMLElement>("history"),
};

const api = new GameApi("");
const controller = new GameController(api, (view) =>
    renderView(targets, view, controller.busy, (v) => {
        controller.clickVertex(v).then((res) => {
            if (res === "vertex_dead") flash("that vertex is gone");
        });
    }),
);

const errorBox = el<HTMLElement>("error");

function flash(message: string) {
    errorBox.textContent = message;
    errorBox.classList.add("visible");
    setTimeout(() => errorBox.classList.remove("visible"), 1500);
}

el<HTMLFormElement>("setup").addEventListener("submit", (ev) => {
    ev.preventDefault();
    errorBox.textContent = "";
    errorBox.classList.remove("visible");
    const tree = el<HTMLInputElement>("tree").value.trim();
    const engine = el<HTMLSelectElement>("engine").value;
    const humanFirst = el<HTMLSelectElement>("first").value === "you";
    const hints = el<HTMLInputElement>("hints").checked;
    controller.start({ tree, engine, humanFirst, hints }).catch((e) => {
        errorBox.textContent =
            e instanceof ServiceError ? `${e.code}: ${e.message}` : String(e);
        errorBox.classList.add("visible");
    });
});
