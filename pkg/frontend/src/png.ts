import { PNG } from "pngjs";

export interface ImageArray {
  width: number;
  height: number;
  /** interleaved channel count; 1 = grayscale, 3 = RGB */
  channels: 1 | 3;
  /** row-major interleaved 8-bit samples, length = width*height*channels */
  data: Uint8Array;
}

export function validateImage(img: ImageArray): void {
  if (!Number.isInteger(img.width) || img.width < 1) {
    throw new Error(`invalid field 'width': ${img.width}`);
  }
  if (!Number.isInteger(img.height) || img.height < 1) {
    throw new Error(`invalid field 'height': ${img.height}`);
  }
  if (img.channels !== 1 && img.channels !== 3) {
    throw new Error(`invalid field 'channels': must be 1 or 3, got ${img.channels}`);
  }
  const expected = img.width * img.height * img.channels;
  if (!(img.data instanceof Uint8Array) || img.data.length !== expected) {
    throw new Error(
      `invalid field 'data': expected ${expected} bytes for ` +
        `${img.width}x${img.height}x${img.channels}, got ${img.data?.length}`
    );
  }
}

/** Encode to PNG bytes; grayscale images become true single-channel PNGs
 * so the engine decodes them back to one channel. */
export function encodePng(img: ImageArray): Buffer {
  validateImage(img);
  if (img.channels === 1) {
    const png = new PNG({ width: img.width, height: img.height });
    png.data = Buffer.from(img.data);
    return PNG.sync.write(png, { colorType: 0, inputColorType: 0, inputHasAlpha: false });
  }
  const png = new PNG({ width: img.width, height: img.height });
  const rgba = Buffer.alloc(img.width * img.height * 4);
  for (let i = 0, j = 0; i < img.data.length; i += 3, j += 4) {
    rgba[j] = img.data[i];
    rgba[j + 1] = img.data[i + 1];
    rgba[j + 2] = img.data[i + 2];
    rgba[j + 3] = 255;
  }
  png.data = rgba;
  return PNG.sync.write(png, { colorType: 2 });
}

/** Decode PNG bytes to the requested channel count (pngjs always hands
 * back RGBA; engine grayscale files carry R=G=B). */
export function decodePng(buf: Buffer, channels: 1 | 3): ImageArray {
  const png = PNG.sync.read(buf);
  const n = png.width * png.height;
  const data = new Uint8Array(n * channels);
  if (channels === 1) {
    for (let p = 0; p < n; p++) data[p] = png.data[p * 4];
  } else {
    for (let p = 0; p < n; p++) {
      data[p * 3] = png.data[p * 4];
      data[p * 3 + 1] = png.data[p * 4 + 1];
      data[p * 3 + 2] = png.data[p * 4 + 2];
    }
  }
  return { width: png.width, height: png.height, channels, data };
}
