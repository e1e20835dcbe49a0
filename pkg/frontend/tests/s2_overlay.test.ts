// Overlay geometry: region strings scale linearly with the displayed
// image size, within one display pixel at every zoom level.

import { describe, expect, it } from "vitest";

import { drawOverlays, parseRegion, scaleRegion } from "../src/overlay.js";

const REGIONS = [
  { x: 100, y: 200, w: 80, h: 20 },
  { x: 190, y: 200, w: 90, h: 20 },
  { x: 300, y: 200, w: 60, h: 20 },
  { x: 0, y: 0, w: 33, h: 7 },
  { x: 1017, y: 1391, w: 123, h: 41 },
];

describe("parseRegion", () => {
  it("reads x,y,w,h integers", () => {
    expect(parseRegion("100,200,80,20")).toEqual({ x: 100, y: 200, w: 80, h: 20 });
  });

  it("rejects malformed strings", () => {
    expect(parseRegion("100,200,80")).toBeNull();
    expect(parseRegion("a,b,c,d")).toBeNull();
    expect(parseRegion("")).toBeNull();
  });
});

describe("scaleRegion", () => {
  it("halves every coordinate at 50%", () => {
    expect(scaleRegion({ x: 100, y: 200, w: 80, h: 20 }, 0.5, 0.5))
      .toEqual({ x: 50, y: 100, w: 40, h: 10 });
  });

  it("stays within one pixel of linear scaling at 50% and 200%", () => {
    for (const zoom of [0.5, 2.0]) {
      for (const region of REGIONS) {
        const scaled = scaleRegion(region, zoom, zoom);
        expect(Math.abs(scaled.x - region.x * zoom)).toBeLessThanOrEqual(1);
        expect(Math.abs(scaled.y - region.y * zoom)).toBeLessThanOrEqual(1);
        expect(Math.abs(scaled.w - region.w * zoom)).toBeLessThanOrEqual(1);
        expect(Math.abs(scaled.h - region.h * zoom)).toBeLessThanOrEqual(1);
      }
    }
  });

  it("handles anisotropic displays", () => {
    expect(scaleRegion({ x: 100, y: 200, w: 80, h: 20 }, 0.5, 0.25))
      .toEqual({ x: 50, y: 50, w: 40, h: 5 });
  });
});

describe("drawOverlays", () => {
  function rectStyles(layer: HTMLElement): string[][] {
    return [...layer.querySelectorAll<HTMLElement>(".overlay-rect")].map(
      (div) => [div.style.left, div.style.top, div.style.width, div.style.height],
    );
  }

  it("draws one rectangle per region at 50%", () => {
    const layer = document.createElement("div");
    drawOverlays(
      layer,
      REGIONS.slice(0, 3),
      { width: 1200, height: 1600 },
      { width: 600, height: 800 },
    );
    expect(rectStyles(layer)).toEqual([
      ["50px", "100px", "40px", "10px"],
      ["95px", "100px", "45px", "10px"],
      ["150px", "100px", "30px", "10px"],
    ]);
  });

  it("doubles every rectangle at 200%", () => {
    const layer = document.createElement("div");
    drawOverlays(
      layer,
      REGIONS.slice(0, 3),
      { width: 1200, height: 1600 },
      { width: 2400, height: 3200 },
    );
    expect(rectStyles(layer)).toEqual([
      ["200px", "400px", "160px", "40px"],
      ["380px", "400px", "180px", "40px"],
      ["600px", "400px", "120px", "40px"],
    ]);
  });

  it("clears stale rectangles and survives a zero-sized image", () => {
    const layer = document.createElement("div");
    drawOverlays(layer, REGIONS, { width: 100, height: 100 },
                 { width: 100, height: 100 });
    expect(layer.children.length).toBe(REGIONS.length);
    drawOverlays(layer, REGIONS, { width: 0, height: 0 },
                 { width: 100, height: 100 });
    expect(layer.children.length).toBe(0);
  });
});
