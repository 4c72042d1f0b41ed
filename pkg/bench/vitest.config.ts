import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    globalSetup: ["test/globalSetup.ts"],
    testTimeout: 300_000,
    hookTimeout: 300_000,
    // tfjs keeps typed-array pools per process; fork isolation keeps runs clean
    pool: "forks",
  },
});
