/** Search criteria model: building, validating and refining queries.
 *
 * A query is an ordered list of criteria; refinement appends one more and
 * never removes or widens, mirroring the server's conjunction semantics.
 * Validation runs before any request is sent, so a bad field or value is
 * reported inline without a round trip.
 */

export type ValueKind = "text" | "int" | "bool" | "date";

export interface CriterionSpec {
  key: string;
  label: string;
  kind: ValueKind;
  repeatable: boolean;
}

export const CRITERION_SPECS: CriterionSpec[] = [
  { key: "tag", label: "tag", kind: "text", repeatable: true },
  { key: "q", label: "free text", kind: "text", repeatable: false },
  { key: "name", label: "name contains", kind: "text", repeatable: false },
  { key: "creator", label: "creator contains", kind: "text", repeatable: false },
  { key: "description", label: "description contains", kind: "text", repeatable: false },
  { key: "min_nodes", label: "min nodes", kind: "int", repeatable: false },
  { key: "max_nodes", label: "max nodes", kind: "int", repeatable: false },
  { key: "min_edges", label: "min edges", kind: "int", repeatable: false },
  { key: "max_edges", label: "max edges", kind: "int", repeatable: false },
  { key: "planar", label: "planar", kind: "bool", repeatable: false },
  { key: "connected", label: "connected", kind: "bool", repeatable: false },
  { key: "bipartite", label: "bipartite", kind: "bool", repeatable: false },
  { key: "acyclic", label: "acyclic", kind: "bool", repeatable: false },
  { key: "directed", label: "directed", kind: "bool", repeatable: false },
  { key: "from", label: "uploaded after", kind: "date", repeatable: false },
  { key: "to", label: "uploaded before", kind: "date", repeatable: false },
];

const SPEC_BY_KEY = new Map(CRITERION_SPECS.map((s) => [s.key, s]));
const TAG_RE = /^[a-z0-9][a-z0-9_-]{0,63}$/;

export interface Criterion {
  key: string;
  value: string;
}

/** Error message for a single criterion, or null when it is well-formed. */
export function validateCriterion(c: Criterion): string | null {
  const spec = SPEC_BY_KEY.get(c.key);
  if (!spec) {
    return `unknown search field '${c.key}'`;
  }
  const value = c.value.trim();
  if (!value) {
    return "value must not be empty";
  }
  switch (spec.kind) {
    case "int":
      return /^\d+$/.test(value) ? null : `${spec.label} must be a whole number`;
    case "bool":
      return value === "true" || value === "false"
        ? null
        : `${spec.label} must be 'true' or 'false'`;
    case "date":
      return Number.isNaN(Date.parse(value))
        ? `${spec.label} must be an ISO date`
        : null;
    case "text":
      if (c.key === "tag" && !TAG_RE.test(value.toLowerCase())) {
        return "tags are lowercase letters, digits, '-' and '_'";
      }
      return null;
  }
}

/** Error for appending `next` to `existing`, or null when the refinement is
 * acceptable (valid value, key not already constrained unless repeatable). */
export function validateRefinement(
  existing: Criterion[],
  next: Criterion,
): string | null {
  const valueError = validateCriterion(next);
  if (valueError) {
    return valueError;
  }
  const spec = SPEC_BY_KEY.get(next.key)!;
  if (!spec.repeatable && existing.some((c) => c.key === next.key)) {
    return `'${spec.label}' is already part of the query`;
  }
  return null;
}

/** Append a criterion; the input list is not modified. */
export function refine(existing: Criterion[], next: Criterion): Criterion[] {
  return [...existing, next];
}

export function toQueryString(
  criteria: Criterion[],
  page = 1,
  pageSize = 50,
): string {
  const params = new URLSearchParams();
  for (const c of criteria) {
    params.append(c.key, c.value.trim());
  }
  if (criteria.length === 0) {
    params.set("all", "true");
  }
  params.set("page", String(page));
  params.set("page_size", String(pageSize));
  return params.toString();
}

/** Parse the criteria part of a search page URL back into the model. */
export function fromSearchParams(params: URLSearchParams): Criterion[] {
  const criteria: Criterion[] = [];
  for (const [key, value] of params.entries()) {
    if (SPEC_BY_KEY.has(key)) {
      criteria.push({ key, value });
    }
  }
  return criteria;
}
