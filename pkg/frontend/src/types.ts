// Payload types mirroring the service's JSON contract.

export interface Token {
  surface: string;
  lemma: string;
  start: number;
  end: number;
  is_numeric: boolean;
  is_stopword: boolean;
}

export interface SentencePayload {
  index: number;
  text: string;
  tokens: Token[];
}

export interface KeywordPayload {
  text: string;
  lemma_text: string;
  score: number;
  rank: number;
  span: [number, number];
  sentence_index: number;
}

export interface MatchPayload {
  keyword: KeywordPayload;
  pictogram_id: number;
  def_index: number;
  similarity: number;
  method: "embedding" | "numeric";
}

export interface ScaffoldedSentence {
  sentence: SentencePayload;
  keywords: KeywordPayload[];
  matches: MatchPayload[];
}

export interface ViewSettings {
  show_keywords: boolean;
  show_pictograms: boolean;
}

export interface SessionInfo {
  id: string;
  length: number;
  cursor: number;
  language: string;
  settings: ViewSettings;
  created_at: string;
}

export interface SentenceResponse {
  index: number;
  total: number;
  cursor: number;
  sentence: ScaffoldedSentence;
}

export type Rating = "C" | "A" | "I";
export type ItemKind = "keyword" | "pictogram";

export interface AuditRecord {
  reviewer_id: string;
  language: string;
  sentence_id: number;
  item_kind: ItemKind;
  item_ref: string;
  rating: Rating;
}

export interface ApiError {
  code: string;
  message: string;
}
