import { describe, expect, it } from "vitest";

import { parseHash, compareHash, detailHash, searchHash } from "../src/router.js";
import {
  isZipUpload,
  parseTags,
  validateUploadForm,
} from "../src/validation.js";

describe("upload form validation", () => {
  const valid = {
    name: "my graph",
    creator: "me",
    tags: "biology, social",
    filename: "graph.gml",
  };

  it("accepts a complete single-file form", () => {
    expect(validateUploadForm(valid)).toEqual({});
  });

  it("requires a name for single files", () => {
    const errors = validateUploadForm({ ...valid, name: "  " });
    expect(errors.name).toMatch(/required/);
  });

  it("does not require a name for zip bulk uploads", () => {
    const errors = validateUploadForm({
      ...valid,
      name: "",
      filename: "bundle.zip",
    });
    expect(errors.name).toBeUndefined();
  });

  it("requires a creator and a file", () => {
    expect(validateUploadForm({ ...valid, creator: "" }).creator).toBeTruthy();
    expect(validateUploadForm({ ...valid, filename: "" }).file).toBeTruthy();
  });

  it("rejects malformed tags", () => {
    const errors = validateUploadForm({ ...valid, tags: "ok, Bad Tag!" });
    expect(errors.tags).toMatch(/not a valid tag/);
  });

  it("normalizes the tag list", () => {
    expect(parseTags(" Biology , SOCIAL ,, ")).toEqual(["biology", "social"]);
  });

  it("detects zip uploads case-insensitively", () => {
    expect(isZipUpload("Batch.ZIP")).toBe(true);
    expect(isZipUpload("graph.gml")).toBe(false);
  });
});

describe("deep links", () => {
  it("routes detail, compare, upload and search hashes", () => {
    expect(parseHash("#/graphs/01ABC").page).toBe("detail");
    expect(parseHash("#/graphs/01ABC").id).toBe("01ABC");
    expect(parseHash("#/compare?ids=a,b").page).toBe("compare");
    expect(parseHash("#/compare?ids=a,b").params.get("ids")).toBe("a,b");
    expect(parseHash("#/upload").page).toBe("upload");
    expect(parseHash("").page).toBe("search");
    expect(parseHash("#/search?tag=biology").params.get("tag")).toBe(
      "biology",
    );
  });

  it("builders round-trip through the parser", () => {
    expect(parseHash(detailHash("01XYZ")).id).toBe("01XYZ");
    expect(parseHash(compareHash(["a", "b"])).params.get("ids")).toBe("a,b");
    expect(parseHash(searchHash("tag=x")).params.get("tag")).toBe("x");
  });
});
