/**
 * Highlight rectangle geometry.
 *
 * The service reports word regions as "x,y,w,h" strings in page-image
 * pixel coordinates. The page image is usually displayed at another
 * size, so rectangles are scaled by displayed/natural per axis and
 * rounded to whole display pixels (error <= 0.5px per edge).
 */

export interface Region {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function parseRegion(value: string): Region | null {
  const parts = value.split(",");
  if (parts.length !== 4) return null;
  const nums = parts.map((p) => Number(p.trim()));
  if (nums.some((n) => !Number.isFinite(n))) return null;
  return { x: nums[0], y: nums[1], w: nums[2], h: nums[3] };
}

export function scaleRegion(region: Region, sx: number, sy: number): Region {
  return {
    x: Math.round(region.x * sx),
    y: Math.round(region.y * sy),
    w: Math.round(region.w * sx),
    h: Math.round(region.h * sy),
  };
}

/**
 * Replace the contents of `layer` with one absolutely positioned div
 * per region, scaled from natural image size to displayed size.
 */
export function drawOverlays(
  layer: HTMLElement,
  regions: Region[],
  natural: { width: number; height: number },
  displayed: { width: number; height: number },
): void {
  layer.textContent = "";
  if (natural.width <= 0 || natural.height <= 0) return;
  const sx = displayed.width / natural.width;
  const sy = displayed.height / natural.height;
  for (const region of regions) {
    const scaled = scaleRegion(region, sx, sy);
    const div = layer.ownerDocument.createElement("div");
    div.className = "overlay-rect";
    div.style.left = `${scaled.x}px`;
    div.style.top = `${scaled.y}px`;
    div.style.width = `${scaled.w}px`;
    div.style.height = `${scaled.h}px`;
    layer.appendChild(div);
  }
}
