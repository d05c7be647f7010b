import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    globalSetup: "./test/global-setup.ts",
    setupFiles: ["./test/canvas-stub.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
