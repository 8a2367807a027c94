// Executes scene draw operations on a 2D canvas context.

import { Viewport, toCanvas } from "./grid";
import { DrawOp } from "./scene";

export function paint(ctx: CanvasRenderingContext2D, view: Viewport,
                      ops: DrawOp[], resolution: number): void {
  const cellPx = resolution * view.pxPerMeter;
  for (const op of ops) {
    ctx.globalAlpha = 1;
    switch (op.kind) {
      case "cell": {
        const [px, py] = toCanvas(view, op.gx * resolution, (op.gy + 1) * resolution);
        ctx.globalAlpha = op.alpha ?? 1;
        ctx.fillStyle = op.color;
        ctx.fillRect(px, py, cellPx, cellPx);
        break;
      }
      case "line": {
        const [x0, y0] = toCanvas(view, op.x0, op.y0);
        const [x1, y1] = toCanvas(view, op.x1, op.y1);
        ctx.strokeStyle = op.color;
        ctx.lineWidth = op.width;
        ctx.setLineDash(op.dash ? [4, 3] : []);
        ctx.beginPath();
        ctx.moveTo(x0, y0);
        ctx.lineTo(x1, y1);
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case "polyline": {
        ctx.strokeStyle = op.color;
        ctx.lineWidth = op.width;
        ctx.beginPath();
        op.points.forEach(([x, y], i) => {
          const [px, py] = toCanvas(view, x, y);
          if (i === 0) ctx.moveTo(px, py);
          else ctx.lineTo(px, py);
        });
        ctx.stroke();
        break;
      }
      case "marker": {
        const [px, py] = toCanvas(view, op.x, op.y);
        ctx.fillStyle = op.color;
        ctx.beginPath();
        if (op.shape === "circle") {
          ctx.arc(px, py, op.radius, 0, 2 * Math.PI);
        } else {
          const theta = -(op.theta ?? 0); // canvas y is flipped
          const r = op.radius * 1.6;
          ctx.moveTo(px + r * Math.cos(theta), py + r * Math.sin(theta));
          ctx.lineTo(px + r * Math.cos(theta + 2.5), py + r * Math.sin(theta + 2.5));
          ctx.lineTo(px + r * Math.cos(theta - 2.5), py + r * Math.sin(theta - 2.5));
          ctx.closePath();
        }
        ctx.fill();
        break;
      }
      case "label": {
        const [px, py] = toCanvas(view, op.x, op.y);
        ctx.fillStyle = op.color;
        ctx.font = "10px sans-serif";
        ctx.fillText(op.text, px + 3, py - 3);
        break;
      }
    }
  }
  ctx.globalAlpha = 1;
}
