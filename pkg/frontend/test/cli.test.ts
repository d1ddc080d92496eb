import { describe, expect, it, vi } from "vitest";
import fs from "node:fs";
import os from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { main } from "../src/cli.js";

const fixture = (name: string): string =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

const tmpSvg = (): string =>
  path.join(fs.mkdtempSync(path.join(os.tmpdir(), "plots-")), "fig.svg");

describe("cli", () => {
  it("renders a latency figure end to end", () => {
    const out = tmpSvg();
    const rc = main([
      "latency",
      "--out",
      out,
      fixture("latency-T1-bare-metal.json"),
      fixture("latency-T2-bare-metal.json"),
    ]);
    expect(rc).toBe(0);
    const svg = fs.readFileSync(out, "utf-8");
    expect(svg).toContain("linear below 2496 ns");
  });

  it("renders a throughput figure end to end", () => {
    const out = tmpSvg();
    const rc = main([
      "throughput",
      "--out",
      out,
      fixture("throughput-T2-bare-metal.json"),
    ]);
    expect(rc).toBe(0);
    expect(fs.readFileSync(out, "utf-8")).toContain("symlog below 1 Hz");
  });

  it("honors --detail for the close-up threshold", () => {
    const out = tmpSvg();
    const rc = main([
      "latency",
      "--detail",
      "--out",
      out,
      fixture("latency-T2-rtos.json"),
    ]);
    expect(rc).toBe(0);
    expect(fs.readFileSync(out, "utf-8")).toContain("linear below 240 ns");
  });

  it("returns 2 on usage errors", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    try {
      expect(main([])).toBe(2);
      expect(main(["spectrum", "--out", "x.svg", "r.json"])).toBe(2);
      expect(main(["latency", "--out", "x.svg"])).toBe(2);
      expect(main(["latency", "r.json"])).toBe(2);
      expect(main(["latency", "--out", "x.svg", "--nope", "r.json"])).toBe(2);
    } finally {
      err.mockRestore();
    }
  });

  it("returns 1 on schema and mode failures", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    try {
      const out = tmpSvg();
      expect(
        main(["latency", "--out", out, fixture("does-not-exist.json")]),
      ).toBe(1);
      expect(
        main([
          "throughput",
          "--out",
          out,
          fixture("latency-T1-rtos.json"),
        ]),
      ).toBe(1);
    } finally {
      err.mockRestore();
    }
  });
});
