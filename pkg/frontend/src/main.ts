// Browser entry point: wire the app into #app, honouring an optional
// <meta name="api-base" content="http://host:port"> for a service on
// another origin (defaults to same-origin).

import { setApiBase } from "./api.js";
import { mountApp } from "./app.js";

const meta = document.querySelector<HTMLMetaElement>('meta[name="api-base"]');
if (meta && meta.content) setApiBase(meta.content);

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");
mountApp(root);
