/**
 * Interactive 360 panorama viewer: drag to pan around the equirectangular
 * image with horizontal wraparound.  Renders a window of the panorama onto a
 * canvas; lightweight on purpose (no projection warp).
 */

export class PanoramaViewer {
  private image = new Image();
  private azimuth = 0; // pixels of horizontal offset into the source
  private dragging = false;
  private dragStartX = 0;
  private azimuthAtDragStart = 0;
  private loaded = false;

  constructor(private canvas: HTMLCanvasElement) {
    canvas.addEventListener("pointerdown", (ev) => {
      this.dragging = true;
      this.dragStartX = ev.clientX;
      this.azimuthAtDragStart = this.azimuth;
      canvas.setPointerCapture(ev.pointerId);
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (!this.dragging || !this.loaded) return;
      const scale = this.image.width / (3 * canvas.width);
      this.azimuth = this.azimuthAtDragStart - (ev.clientX - this.dragStartX) * scale;
      this.draw();
    });
    const stop = () => {
      this.dragging = false;
    };
    canvas.addEventListener("pointerup", stop);
    canvas.addEventListener("pointercancel", stop);
    this.image.onload = () => {
      this.loaded = true;
      this.draw();
    };
  }

  show(url: string): void {
    this.loaded = false;
    this.image.src = url;
  }

  private draw(): void {
    if (!this.loaded) return;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width: cw, height: ch } = this.canvas;
    const srcW = this.image.width / 3; // a 120-degree window
    const srcH = this.image.height;
    let x = ((this.azimuth % this.image.width) + this.image.width) % this.image.width;
    ctx.clearRect(0, 0, cw, ch);
    const firstSpan = Math.min(srcW, this.image.width - x);
    const firstDst = (firstSpan / srcW) * cw;
    ctx.drawImage(this.image, x, 0, firstSpan, srcH, 0, 0, firstDst, ch);
    if (firstSpan < srcW) {
      ctx.drawImage(this.image, 0, 0, srcW - firstSpan, srcH, firstDst, 0, cw - firstDst, ch);
    }
  }
}
