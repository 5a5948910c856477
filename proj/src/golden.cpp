#include "pel/golden.hpp"

#include "pel/beta.hpp"
#include "pel/parser.hpp"
#include "pel/perm.hpp"
#include "pel/printer.hpp"
#include "pel/translate.hpp"

namespace pel::golden {

// (\x.eq x x) applied to a fair coin over the Church booleans, with
// eq = \p.\q.p q (\u.\v.q v u).
const char* intro_source_text() {
  return "(\\x.(\\p.\\q.p q (\\u.\\v.q v u)) x x) ((\\t.\\f.t) (+) (\\t.\\f.f))";
}

SourcePtr intro_source() { return parse_source(intro_source_text()); }

TermPtr intro_cbn() { return translate_cbn(intro_source()); }

TermPtr intro_cbv() { return translate_cbv(intro_source()); }

TermPtr church_true() { return parse_term("\\t.\\f.t"); }

TermPtr church_false() { return parse_term("\\t.\\f.f"); }

std::string intro_cbv_trace() {
  ReduceResult r = reduce(intro_cbv(), Strategy::FullLeftmost);
  std::string out;
  for (const Step& s : r.trace) out += format_step(s) + "\n";
  out += print(r.term) + "\n";
  return out;
}

}  // namespace pel::golden
