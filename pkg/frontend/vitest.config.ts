import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // end-to-end tests shell out to the python CLI to produce datasets
    testTimeout: 120_000,
    hookTimeout: 180_000,
  },
});
