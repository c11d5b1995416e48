/** Client-side validation for the upload form; mirrors the server's
 * mandatory-field and tag rules so obvious mistakes never leave the page. */

const TAG_RE = /^[a-z0-9][a-z0-9_-]{0,63}$/;

export interface UploadForm {
  name: string;
  creator: string;
  tags: string;
  /** Raw file name; zip triggers bulk import. */
  filename: string;
}

export function isZipUpload(filename: string): boolean {
  return filename.toLowerCase().endsWith(".zip");
}

export function parseTags(raw: string): string[] {
  return raw
    .split(",")
    .map((t) => t.trim().toLowerCase())
    .filter((t) => t.length > 0);
}

/** Field name -> error message; empty object when the form is valid. */
export function validateUploadForm(form: UploadForm): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!isZipUpload(form.filename)) {
    if (!form.name.trim()) {
      errors.name = "a name is required";
    }
  }
  if (!form.creator.trim()) {
    errors.creator = "a creator is required";
  }
  if (!form.filename) {
    errors.file = "choose a file to upload";
  }
  for (const tag of parseTags(form.tags)) {
    if (!TAG_RE.test(tag)) {
      errors.tags = `'${tag}' is not a valid tag`;
      break;
    }
  }
  return errors;
}
