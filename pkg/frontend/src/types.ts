/** Payload shapes of the archive's public HTTP API. */

export interface GraphSummary {
  id: string;
  name: string;
  creator: string;
  uploaded_at: string;
  status: string;
  format: string;
  tags: string[];
  node_count: number | null;
  edge_count: number | null;
  directed: boolean | null;
  is_planar: boolean | null;
  is_connected: boolean | null;
  has_image: boolean;
}

export interface SearchResponse {
  total: number;
  page: number;
  page_size: number;
  results: GraphSummary[];
}

export interface CommentDoc {
  author: string;
  timestamp: string;
  text: string;
}

export interface ReferenceDoc {
  kind: "publication" | "website";
  citation_or_url: string;
}

export interface MetadataDoc {
  name: string;
  creator: string;
  uploaded_at: string;
  description: string | null;
  creation_method: string | null;
  license: string | null;
  tags: string[];
  comments: CommentDoc[];
  references: ReferenceDoc[];
}

export interface GraphDetail {
  id: string;
  uri: string;
  status: string;
  format: string;
  analysis_error: string | null;
  has_image: boolean;
  metadata: MetadataDoc;
  properties: Record<string, unknown> | null;
  user_properties: Record<string, number>;
}

export type Tally = "none" | "some" | "all";

export interface CompareRow {
  property: string;
  values: Record<string, number | boolean | null>;
  tally?: Tally;
}

export interface CompareResponse {
  ids: string[];
  rows: CompareRow[];
}

export interface ImportFileResult {
  filename: string;
  id: string | null;
  error: string | null;
}

export interface LossItemDoc {
  kind: string;
  count: number;
  message: string;
  detail?: string;
}

export interface LossReportDoc {
  lossless: boolean;
  dropped_items: LossItemDoc[];
}

export interface UploadBody {
  content: string;
  name: string;
  creator: string;
  format?: string;
  description?: string;
  creation_method?: string;
  license?: string;
  tags?: string[];
}

export interface UploadResponse {
  id: string;
  uri: string;
  status: string;
}
