import { describe, expect, it } from "vitest";

import {
  composeQuery,
  emptySearch,
  parseRoute,
  routeToHash,
  type SearchState,
} from "../src/urlstate.js";

describe("parseRoute", () => {
  it("defaults to an empty search", () => {
    expect(parseRoute("")).toEqual(emptySearch());
    expect(parseRoute("#/search")).toEqual(emptySearch());
    expect(parseRoute("#/somewhere-else")).toEqual(emptySearch());
  });

  it("reads search parameters", () => {
    expect(parseRoute("#/search?q=plague&zone=causes&from=1894&to=1896"))
      .toEqual({
        view: "search",
        q: "plague",
        zone: "causes",
        type: null,
        yearFrom: "1894",
        yearTo: "1896",
      });
  });

  it("reads document routes, ignoring a malformed page", () => {
    expect(parseRoute("#/doc/rpt-hongkong-1894?dq=plague&page=3")).toEqual({
      view: "doc",
      docId: "rpt-hongkong-1894",
      dq: "plague",
      page: 3,
    });
    expect(parseRoute("#/doc/rpt-x?page=later")).toEqual({
      view: "doc",
      docId: "rpt-x",
      dq: "",
      page: null,
    });
  });
});

describe("routeToHash", () => {
  it("round-trips every canonical hash", () => {
    const hashes = [
      "#/search",
      "#/search?q=plague",
      "#/search?q=plague&zone=causes&type=person&from=1894&to=1896",
      "#/doc/rpt-hongkong-1894",
      "#/doc/rpt-hongkong-1894?dq=plague+OR+soil&page=3",
    ];
    for (const hash of hashes) {
      expect(routeToHash(parseRoute(hash))).toBe(hash);
    }
  });

  it("escapes awkward document ids", () => {
    const hash = routeToHash({ view: "doc", docId: "a b/c", dq: "", page: null });
    expect(hash).toBe("#/doc/a%20b%2Fc");
    expect(parseRoute(hash)).toEqual({
      view: "doc", docId: "a b/c", dq: "", page: null,
    });
  });
});

describe("composeQuery", () => {
  function state(overrides: Partial<SearchState>): SearchState {
    return { ...emptySearch(), ...overrides };
  }

  it("passes bare terms through", () => {
    expect(composeQuery(state({ q: "plague" }))).toBe("plague");
  });

  it("appends facet filters in query syntax", () => {
    expect(composeQuery(state({ q: "plague", zone: "causes" })))
      .toBe("plague zone:causes");
    expect(composeQuery(state({ q: "plague", type: "person" })))
      .toBe("plague type:person");
  });

  it("renders year ranges and single bounds", () => {
    expect(composeQuery(state({ q: "rats", yearFrom: "1894", yearTo: "1896" })))
      .toBe("rats year:[1894 TO 1896]");
    expect(composeQuery(state({ q: "rats", yearFrom: "1894" })))
      .toBe("rats year:1894");
    expect(composeQuery(state({ q: "rats", yearTo: "1900" })))
      .toBe("rats year:1900");
  });

  it("allows filters without terms and trims whitespace", () => {
    expect(composeQuery(state({ zone: "causes" }))).toBe("zone:causes");
    expect(composeQuery(state({ q: "  plague  " }))).toBe("plague");
    expect(composeQuery(state({}))).toBe("");
  });
});
