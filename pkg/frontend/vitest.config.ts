import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 300_000,
    hookTimeout: 120_000,
    // binding tests spawn the engine; keep files sequential so subprocess
    // load stays predictable
    fileParallelism: false,
  },
});
