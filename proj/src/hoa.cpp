#include "paradet/hoa.hpp"

#include <algorithm>

#include "paradet/lir.hpp"

namespace paradet {

namespace {

// --- tokenizer -----------------------------------------------------------

struct Token {
  enum Kind { Int, Str, Ident, Header, Punct, Body, End, Eof } kind;
  std::string text;
  std::uint64_t value = 0;
  std::size_t line = 1, col = 1;
};

struct Lexer {
  std::string_view in;
  std::size_t pos = 0, line = 1, col = 1;

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line, col); }

  void advance(char ch) {
    ++pos;
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  void skip_space() {
    while (pos < in.size()) {
      char ch = in[pos];
      if (ch == '/' && pos + 1 < in.size() && in[pos + 1] == '*') {
        while (pos < in.size() && !(in[pos] == '*' && pos + 1 < in.size() && in[pos + 1] == '/'))
          advance(in[pos]);
        if (pos < in.size()) {
          advance('*');
          advance('/');
        }
        continue;
      }
      if (ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n') break;
      advance(ch);
    }
  }

  Token next() {
    skip_space();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= in.size()) {
      t.kind = Token::Eof;
      return t;
    }
    char ch = in[pos];
    if (ch == '"') {
      advance(ch);
      std::string out;
      while (pos < in.size() && in[pos] != '"') {
        if (in[pos] == '\\' && pos + 1 < in.size()) advance(in[pos]);
        out += in[pos];
        advance(in[pos]);
      }
      if (pos >= in.size()) fail("unterminated string");
      advance('"');
      t.kind = Token::Str;
      t.text = std::move(out);
      return t;
    }
    if (ch >= '0' && ch <= '9') {
      std::uint64_t v = 0;
      std::string text;
      while (pos < in.size() && in[pos] >= '0' && in[pos] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(in[pos] - '0');
        text += in[pos];
        advance(in[pos]);
      }
      t.kind = Token::Int;
      t.value = v;
      t.text = std::move(text);
      return t;
    }
    if (ch == '-' && in.substr(pos, 8) == "--BODY--") {
      for (int i = 0; i < 8; ++i) advance(in[pos]);
      t.kind = Token::Body;
      return t;
    }
    if (ch == '-' && in.substr(pos, 7) == "--END--") {
      for (int i = 0; i < 7; ++i) advance(in[pos]);
      t.kind = Token::End;
      return t;
    }
    auto ident_char = [](char x) {
      return (x >= 'a' && x <= 'z') || (x >= 'A' && x <= 'Z') || (x >= '0' && x <= '9') ||
             x == '_' || x == '-';
    };
    if (ident_char(ch) && !(ch >= '0' && ch <= '9')) {
      std::string text;
      while (pos < in.size() && ident_char(in[pos])) {
        text += in[pos];
        advance(in[pos]);
      }
      if (pos < in.size() && in[pos] == ':') {
        advance(':');
        t.kind = Token::Header;
        t.text = std::move(text);
        return t;
      }
      t.kind = Token::Ident;
      t.text = std::move(text);
      return t;
    }
    t.kind = Token::Punct;
    t.text = std::string(1, ch);
    advance(ch);
    return t;
  }
};

std::vector<Token> tokenize(std::string_view text) {
  Lexer lex{text};
  std::vector<Token> out;
  for (;;) {
    out.push_back(lex.next());
    if (out.back().kind == Token::Eof) return out;
  }
}

// --- acceptance formulas --------------------------------------------------

struct Acc {
  enum Kind { True, False, Inf, Fin, And, Or };
  Kind kind = True;
  std::uint32_t set = 0;
  std::vector<Acc> kids;

  Acc() = default;
  explicit Acc(Kind k, std::uint32_t s = 0) : kind(k), set(s) {}

  bool operator==(const Acc& other) const {
    return kind == other.kind && set == other.set && kids == other.kids;
  }
};

struct AccParser {
  const std::vector<Token>& toks;
  std::size_t pos;
  std::size_t end;

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = toks[std::min(pos, toks.size() - 1)];
    throw parse_error(what, t.line, t.col);
  }
  const Token& peek() const { return toks[pos]; }

  Acc parse_or() {
    Acc left = parse_and();
    while (pos < end && peek().kind == Token::Punct && peek().text == "|") {
      ++pos;
      Acc right = parse_and();
      if (left.kind == Acc::Or) {
        left.kids.push_back(std::move(right));
      } else {
        Acc node{Acc::Or};
        node.kids.push_back(std::move(left));
        node.kids.push_back(std::move(right));
        left = std::move(node);
      }
    }
    return left;
  }

  Acc parse_and() {
    Acc left = parse_atom();
    while (pos < end && peek().kind == Token::Punct && peek().text == "&") {
      ++pos;
      Acc right = parse_atom();
      if (left.kind == Acc::And) {
        left.kids.push_back(std::move(right));
      } else {
        Acc node{Acc::And};
        node.kids.push_back(std::move(left));
        node.kids.push_back(std::move(right));
        left = std::move(node);
      }
    }
    return left;
  }

  Acc parse_atom() {
    if (pos >= end) fail("acceptance formula ends unexpectedly");
    const Token& t = peek();
    if (t.kind == Token::Punct && t.text == "(") {
      ++pos;
      Acc inner = parse_or();
      if (pos >= end || peek().text != ")") fail("expected ')'");
      ++pos;
      return inner;
    }
    if (t.kind == Token::Ident && (t.text == "t" || t.text == "f")) {
      ++pos;
      return Acc{t.text == "t" ? Acc::True : Acc::False};
    }
    if (t.kind == Token::Ident && (t.text == "Inf" || t.text == "Fin")) {
      Acc node{t.text == "Inf" ? Acc::Inf : Acc::Fin};
      ++pos;
      if (pos >= end || peek().text != "(") fail("expected '(' after Inf/Fin");
      ++pos;
      if (pos >= end || peek().kind != Token::Int) fail("expected set number");
      node.set = static_cast<std::uint32_t>(peek().value);
      ++pos;
      if (pos >= end || peek().text != ")") fail("expected ')'");
      ++pos;
      return node;
    }
    fail("unexpected token in acceptance formula");
  }
};

// Canonical parity formula: walking the sets from the decisive end, matching
// parities contribute Inf disjuncts, the others Fin conjuncts.
Acc parity_formula(bool min, bool even, std::uint32_t sets, std::uint32_t index = 0) {
  std::uint32_t set = min ? index : sets - 1 - index;
  bool good = (set % 2 == 0) == even;
  Acc atom{good ? Acc::Inf : Acc::Fin};
  atom.set = set;
  if (index + 1 == sets) return atom;
  Acc rest = parity_formula(min, even, sets, index + 1);
  Acc node{good ? Acc::Or : Acc::And};
  node.kids.push_back(std::move(atom));
  node.kids.push_back(std::move(rest));
  return node;
}

std::string render_acc(const Acc& a) {
  switch (a.kind) {
    case Acc::True:
      return "t";
    case Acc::False:
      return "f";
    case Acc::Inf:
      return "Inf(" + std::to_string(a.set) + ")";
    case Acc::Fin:
      return "Fin(" + std::to_string(a.set) + ")";
    case Acc::And:
    case Acc::Or: {
      std::string sep = a.kind == Acc::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (i) out += sep;
        const Acc& kid = a.kids[i];
        bool paren = kid.kind == Acc::And || kid.kind == Acc::Or;
        if (paren) out += '(';
        out += render_acc(kid);
        if (paren) out += ')';
      }
      return out;
    }
  }
  return {};
}

bool is_streett_shape(const Acc& a) {
  auto is_clause = [](const Acc& x) {
    return x.kind == Acc::Or && x.kids.size() == 2 &&
           ((x.kids[0].kind == Acc::Fin && x.kids[1].kind == Acc::Inf) ||
            (x.kids[0].kind == Acc::Inf && x.kids[1].kind == Acc::Fin));
  };
  if (is_clause(a)) return true;
  if (a.kind != Acc::And) return false;
  return std::all_of(a.kids.begin(), a.kids.end(), is_clause);
}

// --- parsing --------------------------------------------------------------

struct HeaderValue {
  std::vector<Token> toks;
};

bool rabin_shape(const Acc& a, std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  auto pair_of = [&](const Acc& x) -> bool {
    if (x.kind != Acc::And || x.kids.size() != 2) return false;
    const Acc *fin = nullptr, *inf = nullptr;
    for (const Acc& kid : x.kids) {
      if (kid.kind == Acc::Fin) fin = &kid;
      if (kid.kind == Acc::Inf) inf = &kid;
    }
    if (!fin || !inf) return false;
    pairs.emplace_back(fin->set, inf->set);
    return true;
  };
  if (a.kind == Acc::False) return true;  // zero pairs
  if (pair_of(a)) return true;
  if (a.kind != Acc::Or) return false;
  for (const Acc& kid : a.kids)
    if (!pair_of(kid)) return false;
  return true;
}

}  // namespace

ParsedHoa parse_hoa(std::string_view text) {
  std::vector<Token> toks = tokenize(text);
  std::size_t pos = 0;
  auto at = [&]() -> const Token& { return toks[pos]; };
  auto fail = [&](const std::string& what) -> void {
    throw parse_error(what, at().line, at().col);
  };

  ParsedHoa doc;
  bool saw_hoa = false, saw_states = false, saw_acceptance = false;
  std::vector<std::string> aps;
  bool alphabet_mode = false;
  std::vector<Token> acc_formula_toks;
  std::vector<std::string> acc_name;

  while (at().kind == Token::Header) {
    std::string name = at().text;
    ++pos;
    std::vector<Token> value;
    while (at().kind != Token::Header && at().kind != Token::Body && at().kind != Token::Eof)
      value.push_back(toks[pos++]);
    auto want_int = [&](std::size_t i) -> std::uint64_t {
      if (i >= value.size() || value[i].kind != Token::Int)
        throw parse_error("header '" + name + "' expects an integer", value.empty() ? 0 : value[0].line,
                          value.empty() ? 0 : value[0].col);
      return value[i].value;
    };
    if (name == "HOA") {
      if (value.size() != 1 || value[0].kind != Token::Ident || value[0].text != "v1")
        fail("only HOA v1 is supported");
      saw_hoa = true;
    } else if (name == "States") {
      doc.states = static_cast<std::uint32_t>(want_int(0));
      saw_states = true;
    } else if (name == "Start") {
      if (value.size() != 1)
        fail("conjunctive or missing start states are not supported");
      set_insert(doc.start, static_cast<state_t>(want_int(0)));
    } else if (name == "AP") {
      std::uint64_t k = want_int(0);
      for (std::uint64_t i = 0; i < k; ++i) {
        if (1 + i >= value.size() || value[1 + i].kind != Token::Str)
          fail("AP header expects quoted proposition names");
        aps.push_back(value[1 + i].text);
      }
    } else if (name == "alphabet") {
      alphabet_mode = true;
      for (const Token& t : value) {
        if (t.kind != Token::Str) fail("alphabet header expects quoted letters");
        doc.letters.push_back(t.text);
      }
    } else if (name == "Acceptance") {
      doc.set_count = static_cast<std::uint32_t>(want_int(0));
      acc_formula_toks.assign(value.begin() + 1, value.end());
      saw_acceptance = true;
    } else if (name == "acc-name") {
      for (const Token& t : value) acc_name.push_back(t.kind == Token::Int ? t.text : t.text);
    } else if (name == "top-state") {
      doc.top_state = static_cast<state_t>(want_int(0));
    } else if (name == "pair-names") {
      for (const Token& t : value) {
        if (t.kind != Token::Str) fail("pair-names header expects quoted names");
        doc.pair_names.push_back(t.text);
      }
    } else {
      // name:, tool:, properties:, comments and other extras carry no
      // semantics for us
    }
  }
  if (!saw_hoa) fail("missing HOA: v1 header");
  if (!saw_states) fail("missing States: header");
  if (!saw_acceptance) fail("missing Acceptance: header");
  if (doc.start.empty()) fail("missing Start: header");

  // alphabet: explicit letters, or minterms over the propositions
  if (!alphabet_mode) {
    if (aps.size() > 8) fail("more than 8 atomic propositions (256 minterms) are not supported");
    std::uint32_t k = static_cast<std::uint32_t>(aps.size());
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
      std::string name;
      for (std::uint32_t i = 0; i < k; ++i) {
        if (i) name += '&';
        if (!(m & (1u << i))) name += '!';
        name += aps[i];
      }
      if (name.empty()) name = "t";
      doc.letters.push_back(name);
    }
  }

  // classify the acceptance condition
  Acc formula{Acc::False};
  {
    AccParser parser{acc_formula_toks, 0, acc_formula_toks.size()};
    formula = parser.parse_or();
    if (parser.pos != acc_formula_toks.size()) {
      const Token& t = acc_formula_toks[parser.pos];
      throw parse_error("trailing tokens in acceptance formula", t.line, t.col);
    }
  }
  auto classify = [&]() {
    if (!acc_name.empty()) {
      if (acc_name[0] == "Buchi") {
        doc.acceptance = HoaAcceptance::Buchi;
        return;
      }
      if (acc_name[0] == "Streett") throw unsupported_error("Streett acceptance is not supported");
      if (acc_name[0] == "generalized-Buchi")
        throw unsupported_error("generalized-Buchi acceptance is not supported");
      if (acc_name[0] == "parity" && acc_name.size() >= 3) {
        bool min = acc_name[1] == "min";
        bool even = acc_name[2] == "even";
        doc.acceptance = min ? (even ? HoaAcceptance::ParityMinEven : HoaAcceptance::ParityMinOdd)
                             : (even ? HoaAcceptance::ParityMaxEven : HoaAcceptance::ParityMaxOdd);
        return;
      }
      if (acc_name[0] == "Rabin") {
        if (!rabin_shape(formula, doc.rabin_pairs))
          throw parse_error("acceptance formula does not match the Rabin acc-name", 1, 1);
        doc.acceptance = HoaAcceptance::Rabin;
        return;
      }
      // unknown acc-name: fall through to formula matching
    }
    if (doc.set_count == 1 && formula == Acc(Acc::Inf, 0)) {
      doc.acceptance = HoaAcceptance::Buchi;
      return;
    }
    if (doc.set_count >= 1) {
      if (formula == parity_formula(true, true, doc.set_count)) {
        doc.acceptance = HoaAcceptance::ParityMinEven;
        return;
      }
      if (formula == parity_formula(true, false, doc.set_count)) {
        doc.acceptance = HoaAcceptance::ParityMinOdd;
        return;
      }
      if (formula == parity_formula(false, true, doc.set_count)) {
        doc.acceptance = HoaAcceptance::ParityMaxEven;
        return;
      }
      if (formula == parity_formula(false, false, doc.set_count)) {
        doc.acceptance = HoaAcceptance::ParityMaxOdd;
        return;
      }
    }
    if (rabin_shape(formula, doc.rabin_pairs)) {
      doc.acceptance = HoaAcceptance::Rabin;
      return;
    }
    if (is_streett_shape(formula)) throw unsupported_error("Streett acceptance is not supported");
    throw unsupported_error("unsupported acceptance condition");
  };
  classify();
  if (doc.acceptance == HoaAcceptance::Buchi && doc.rabin_pairs.empty())
    doc.rabin_pairs.emplace_back(0xFFFFFFFFu, 0);  // virtual pair: no Fin set

  if (at().kind != Token::Body) fail("expected --BODY--");
  ++pos;

  doc.state_names.assign(doc.states, "");
  std::vector<char> seen_state(doc.states, 0);
  std::uint32_t current = 0;
  bool have_state = false;
  while (at().kind != Token::End) {
    if (at().kind == Token::Eof) fail("missing --END--");
    if (at().kind == Token::Header && at().text == "State") {
      ++pos;
      if (at().kind != Token::Int) fail("State: expects a number");
      current = static_cast<std::uint32_t>(at().value);
      if (current >= doc.states) fail("state number out of range");
      if (seen_state[current]) fail("duplicate state definition");
      seen_state[current] = 1;
      have_state = true;
      ++pos;
      if (at().kind == Token::Str) {
        doc.state_names[current] = at().text;
        ++pos;
      }
      if (at().kind == Token::Punct && at().text == "{")
        fail("state-based acceptance is not supported");
      continue;
    }
    if (at().kind == Token::Punct && at().text == "[") {
      if (!have_state) fail("edge before the first State:");
      ++pos;
      // label: letter index in alphabet mode, boolean formula over APs else
      std::vector<std::uint32_t> letters_hit;
      if (alphabet_mode) {
        if (at().kind == Token::Ident && at().text == "t") {
          for (std::uint32_t i = 0; i < doc.letters.size(); ++i) letters_hit.push_back(i);
          ++pos;
        } else {
          if (at().kind != Token::Int) fail("alphabet-mode labels are letter indices");
          std::uint32_t letter = static_cast<std::uint32_t>(at().value);
          if (letter >= doc.letters.size()) fail("letter index out of range");
          letters_hit.push_back(letter);
          ++pos;
        }
      } else {
        // recursive descent over !, &, |, t, f, ap-numbers, parens
        std::uint32_t k = static_cast<std::uint32_t>(aps.size());
        std::size_t expr_start = pos;
        // first, find the matching ']' to bound the expression
        std::size_t depth = 0;
        std::size_t end = pos;
        while (!(toks[end].kind == Token::Punct && toks[end].text == "]" && depth == 0)) {
          if (toks[end].kind == Token::Eof) fail("unterminated edge label");
          if (toks[end].kind == Token::Punct && toks[end].text == "(") ++depth;
          if (toks[end].kind == Token::Punct && toks[end].text == ")") --depth;
          ++end;
        }
        for (std::uint32_t m = 0; m < (1u << k); ++m) {
          std::size_t p = expr_start;
          auto atom = [&](auto&& self) -> bool {
            const Token& t = toks[p];
            if (t.kind == Token::Punct && t.text == "!") {
              ++p;
              return !self(self);
            }
            if (t.kind == Token::Punct && t.text == "(") {
              ++p;
              // or-expression
              bool v = false;
              bool first = true;
              for (;;) {
                bool conj = true;
                bool cfirst = true;
                for (;;) {
                  bool a = self(self);
                  conj = cfirst ? a : (conj && a);
                  cfirst = false;
                  if (toks[p].kind == Token::Punct && toks[p].text == "&") {
                    ++p;
                    continue;
                  }
                  break;
                }
                v = first ? conj : (v || conj);
                first = false;
                if (toks[p].kind == Token::Punct && toks[p].text == "|") {
                  ++p;
                  continue;
                }
                break;
              }
              if (!(toks[p].kind == Token::Punct && toks[p].text == ")")) fail("expected ')'");
              ++p;
              return v;
            }
            if (t.kind == Token::Ident && t.text == "t") {
              ++p;
              return true;
            }
            if (t.kind == Token::Ident && t.text == "f") {
              ++p;
              return false;
            }
            if (t.kind == Token::Int) {
              std::uint32_t ap_index = static_cast<std::uint32_t>(t.value);
              if (ap_index >= k) fail("proposition index out of range");
              ++p;
              return (m & (1u << ap_index)) != 0;
            }
            fail("unexpected token in edge label");
            return false;  // unreachable: fail throws
          };
          // top-level or/and over atoms
          bool v = false;
          bool first = true;
          for (;;) {
            bool conj = true;
            bool cfirst = true;
            for (;;) {
              bool a = atom(atom);
              conj = cfirst ? a : (conj && a);
              cfirst = false;
              if (p < end && toks[p].kind == Token::Punct && toks[p].text == "&") {
                ++p;
                continue;
              }
              break;
            }
            v = first ? conj : (v || conj);
            first = false;
            if (p < end && toks[p].kind == Token::Punct && toks[p].text == "|") {
              ++p;
              continue;
            }
            break;
          }
          if (p != end) fail("trailing tokens in edge label");
          if (v) letters_hit.push_back(m);
        }
        pos = end;
      }
      if (!(at().kind == Token::Punct && at().text == "]")) fail("expected ']'");
      ++pos;
      if (at().kind != Token::Int) fail("expected destination state");
      std::uint32_t dst = static_cast<std::uint32_t>(at().value);
      if (dst >= doc.states) fail("destination state out of range");
      ++pos;
      std::vector<std::uint32_t> marks;
      if (at().kind == Token::Punct && at().text == "{") {
        ++pos;
        while (at().kind == Token::Int) {
          std::uint32_t m = static_cast<std::uint32_t>(at().value);
          if (m >= doc.set_count) fail("acceptance set out of range");
          marks.push_back(m);
          ++pos;
        }
        if (!(at().kind == Token::Punct && at().text == "}")) fail("expected '}'");
        ++pos;
      }
      std::sort(marks.begin(), marks.end());
      for (std::uint32_t letter : letters_hit) doc.edges.push_back({current, letter, dst, marks});
      continue;
    }
    fail("unexpected token in automaton body");
  }
  for (state_t q : doc.start)
    if (q >= doc.states) throw parse_error("start state out of range", 1, 1);
  return doc;
}

// --- conversions ----------------------------------------------------------

namespace {

// Removes the materialised TOP state (it must be the last one) and redirects
// its incoming edges to the internal TOP target.
struct TopFold {
  std::uint32_t n;
  std::optional<state_t> top;

  explicit TopFold(const ParsedHoa& doc) : n(doc.states), top(doc.top_state) {
    if (top) {
      if (*top + 1 != doc.states)
        throw validation_error("top-state must be the last state of the document");
      --n;
    }
  }
  bool skip_src(std::uint32_t src) const { return top && src == *top; }
  state_t fold_dst(std::uint32_t dst) const { return top && dst == *top ? kTopState : dst; }
};

std::uint32_t single_mark(const ParsedHoa::Edge& e) {
  if (e.marks.size() != 1)
    throw validation_error("parity automata need exactly one acceptance mark per transition");
  return e.marks[0];
}

}  // namespace

ParityNpa to_parity_npa(const ParsedHoa& doc) {
  ParityNpa p;
  TopFold fold(doc);
  p.n = fold.n;
  p.letters = doc.letters;
  p.initial = doc.start;
  std::uint32_t K = doc.set_count;
  auto convert = [&](const ParsedHoa::Edge& e) -> std::uint32_t {
    switch (doc.acceptance) {
      case HoaAcceptance::Buchi:
        return e.marks.empty() ? 1 : 2;
      case HoaAcceptance::ParityMaxOdd:
        return single_mark(e) + 1;
      case HoaAcceptance::ParityMaxEven:
        return single_mark(e) + 2;
      case HoaAcceptance::ParityMinEven:
        return (K % 2 == 0 ? K : K + 1) - single_mark(e);
      case HoaAcceptance::ParityMinOdd:
        return (K % 2 == 1 ? K : K + 1) - single_mark(e);
      case HoaAcceptance::Rabin: {
        if (doc.rabin_pairs.size() != 1)
          throw unsupported_error("multi-pair Rabin input cannot be read as a parity automaton");
        auto [fin, inf] = doc.rabin_pairs[0];
        bool in_r = std::binary_search(e.marks.begin(), e.marks.end(), fin);
        bool in_a = std::binary_search(e.marks.begin(), e.marks.end(), inf);
        if (in_r && in_a) throw validation_error("A and R must be disjoint");
        return in_r ? 3 : in_a ? 2 : 1;
      }
    }
    return 1;
  };
  switch (doc.acceptance) {
    case HoaAcceptance::Buchi:
      p.c = 2;
      break;
    case HoaAcceptance::ParityMaxOdd:
      p.c = K;
      break;
    case HoaAcceptance::ParityMaxEven:
      p.c = K + 1;
      break;
    case HoaAcceptance::ParityMinEven:
      p.c = K % 2 == 0 ? K : K + 1;
      break;
    case HoaAcceptance::ParityMinOdd:
      p.c = K % 2 == 1 ? K : K + 1;
      break;
    case HoaAcceptance::Rabin:
      p.c = 3;
      break;
  }
  for (const ParsedHoa::Edge& e : doc.edges) {
    if (fold.skip_src(e.src)) continue;
    p.transitions.push_back({e.src, e.letter, fold.fold_dst(e.dst)});
    p.pri.push_back(convert(e));
  }
  normalise_priorities(p);
  validate(p);
  return p;
}

OnePairRabinNpa to_one_pair_rabin(const ParsedHoa& doc) {
  if (doc.acceptance != HoaAcceptance::Buchi &&
      !(doc.acceptance == HoaAcceptance::Rabin && doc.rabin_pairs.size() <= 1))
    throw unsupported_error("expected Buchi or one-pair Rabin acceptance");
  OnePairRabinNpa r;
  TopFold fold(doc);
  r.n = fold.n;
  r.letters = doc.letters;
  r.initial = doc.start;
  std::uint32_t fin = 0xFFFFFFFFu, inf = 0xFFFFFFFFu;
  if (!doc.rabin_pairs.empty()) {
    fin = doc.rabin_pairs[0].first;
    inf = doc.rabin_pairs[0].second;
  }
  for (const ParsedHoa::Edge& e : doc.edges) {
    if (fold.skip_src(e.src)) continue;
    std::uint32_t t = static_cast<std::uint32_t>(r.transitions.size());
    r.transitions.push_back({e.src, e.letter, fold.fold_dst(e.dst)});
    if (std::binary_search(e.marks.begin(), e.marks.end(), inf)) r.accepting.push_back(t);
    if (fin != 0xFFFFFFFFu && std::binary_search(e.marks.begin(), e.marks.end(), fin))
      r.rejecting.push_back(t);
  }
  validate(r);
  return r;
}

namespace {

// Deterministic skeleton shared by the two det conversions.
struct DetSkeleton {
  std::uint32_t states;
  std::vector<std::uint32_t> delta;
  std::vector<std::vector<std::uint32_t>> marks;  // per transition id
  std::vector<DetStateKind> kinds;
  std::vector<std::string> labels;
  std::vector<char> defined;  // per original-slot: had an edge in the document
  bool added_sink = false;

  DetSkeleton(const ParsedHoa& doc) {
    if (doc.top_state)
      throw validation_error("deterministic documents must not carry a top-state header");
    if (doc.start.size() != 1)
      throw validation_error("deterministic automata need exactly one start state");
    std::uint32_t L = static_cast<std::uint32_t>(doc.letters.size());
    states = doc.states;
    defined.assign(static_cast<std::size_t>(states) * L, 0);
    delta.assign(static_cast<std::size_t>(states) * L, 0);
    marks.assign(static_cast<std::size_t>(states) * L, {});
    for (const ParsedHoa::Edge& e : doc.edges) {
      std::size_t slot = static_cast<std::size_t>(e.src) * L + e.letter;
      if (defined[slot]) throw validation_error("automaton is not deterministic");
      defined[slot] = 1;
      delta[slot] = e.dst;
      marks[slot] = e.marks;
    }
    bool total = std::all_of(defined.begin(), defined.end(), [](char x) { return x == 1; });
    if (!total) {
      // complete into a fresh rejecting sink
      added_sink = true;
      std::uint32_t sink = states++;
      delta.resize(static_cast<std::size_t>(states) * L);
      marks.resize(static_cast<std::size_t>(states) * L);
      for (std::uint32_t s = 0; s + 1 < states; ++s)
        for (std::uint32_t a = 0; a < L; ++a) {
          std::size_t slot = static_cast<std::size_t>(s) * L + a;
          if (!defined[slot]) delta[slot] = sink;
        }
      for (std::uint32_t a = 0; a < L; ++a) delta[static_cast<std::size_t>(sink) * L + a] = sink;
    }
    defined.resize(static_cast<std::size_t>(states) * L, 0);
    for (std::uint32_t s = 0; s < states; ++s) {
      std::string name = s < doc.states ? doc.state_names[s] : "\xe2\x88\x85";
      labels.push_back(name);
      if (name == "\xe2\x8a\xa4")
        kinds.push_back(DetStateKind::AcceptSink);
      else if (name == "\xe2\x88\x85")
        kinds.push_back(DetStateKind::RejectSink);
      else
        kinds.push_back(DetStateKind::Tree);
    }
  }
};

}  // namespace

DetRabinAutomaton to_det_rabin(const ParsedHoa& doc) {
  if (doc.acceptance != HoaAcceptance::Rabin && doc.acceptance != HoaAcceptance::Buchi)
    throw unsupported_error("expected Rabin or Buchi acceptance for a deterministic Rabin read");
  DetSkeleton sk(doc);
  DetRabinAutomaton d;
  d.letters = doc.letters;
  d.initial = doc.start[0];
  d.delta = sk.delta;
  d.kinds = sk.kinds;
  d.state_labels = sk.labels;
  for (std::size_t j = 0; j < doc.rabin_pairs.size(); ++j) {
    RabinPair pair;
    pair.name = j < doc.pair_names.size() ? doc.pair_names[j] : std::to_string(j);
    auto [fin, inf] = doc.rabin_pairs[j];
    for (std::uint32_t tid = 0; tid < sk.marks.size(); ++tid) {
      if (!sk.defined[tid]) {  // completion edges and sink loops reject everywhere
        pair.rejecting.push_back(tid);
        continue;
      }
      if (std::binary_search(sk.marks[tid].begin(), sk.marks[tid].end(), inf))
        pair.accepting.push_back(tid);
      if (fin != 0xFFFFFFFFu && std::binary_search(sk.marks[tid].begin(), sk.marks[tid].end(), fin))
        pair.rejecting.push_back(tid);
    }
    d.pairs.push_back(std::move(pair));
  }
  return d;
}

DetParityAutomaton to_det_parity(const ParsedHoa& doc) {
  bool min_even = doc.acceptance == HoaAcceptance::ParityMinEven;
  bool min_odd = doc.acceptance == HoaAcceptance::ParityMinOdd;
  bool max_even = doc.acceptance == HoaAcceptance::ParityMaxEven;
  bool max_odd = doc.acceptance == HoaAcceptance::ParityMaxOdd;
  if (!(min_even || min_odd || max_even || max_odd))
    throw unsupported_error("expected parity acceptance for a deterministic parity read");
  DetSkeleton sk(doc);
  DetParityAutomaton d;
  d.letters = doc.letters;
  d.initial = doc.start[0];
  d.delta = sk.delta;
  d.kinds = sk.kinds;
  d.state_labels = sk.labels;
  std::uint32_t K = doc.set_count;
  bool shift = false;
  if (min_even)
    for (const ParsedHoa::Edge& e : doc.edges)
      if (!e.marks.empty() && e.marks[0] == 0) shift = true;
  auto convert = [&](std::uint32_t m) -> std::uint32_t {
    if (min_even) return m + (shift ? 2 : 0);
    if (min_odd) return m + 1;
    if (max_even) return (K % 2 == 0 ? K : K + 1) - m;
    return (K % 2 == 1 ? K : K + 1) - m;  // max odd
  };
  d.co_priority.assign(sk.delta.size(), 1);
  for (std::uint32_t tid = 0; tid < sk.delta.size(); ++tid) {
    if (!sk.defined[tid]) continue;  // completion edges and sink loops keep co-priority 1
    if (sk.marks[tid].size() != 1)
      throw validation_error("parity automata need exactly one acceptance mark per transition");
    d.co_priority[tid] = convert(sk.marks[tid][0]);
  }
  if (min_even)
    d.max_co = K - 1 + (shift ? 2 : 0);
  else if (min_odd)
    d.max_co = K;
  else
    d.max_co = (max_even ? (K % 2 == 0 ? K : K + 1) : (K % 2 == 1 ? K : K + 1));
  return d;
}

// --- printing -------------------------------------------------------------

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

struct Printer {
  std::string out;

  void header_common(std::uint32_t states, const StateSet& start,
                     const std::vector<std::string>& letters) {
    out += "HOA: v1\n";
    out += "States: " + std::to_string(states) + "\n";
    for (state_t q : start) out += "Start: " + std::to_string(q) + "\n";
    out += "alphabet:";
    for (const std::string& l : letters) out += " " + quote(l);
    out += "\n";
  }

  void body_begin() { out += "--BODY--\n"; }
  void body_end() { out += "--END--\n"; }

  void state_line(std::uint32_t s, const std::string& name) {
    out += "State: " + std::to_string(s);
    if (!name.empty()) out += " " + quote(name);
    out += "\n";
  }

  void edge_line(std::uint32_t letter, std::uint32_t dst, const std::vector<std::uint32_t>& marks) {
    out += "[" + std::to_string(letter) + "] " + std::to_string(dst);
    if (!marks.empty()) {
      out += " {";
      for (std::size_t i = 0; i < marks.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(marks[i]);
      }
      out += "}";
    }
    out += "\n";
  }
};

}  // namespace

std::string print_hoa(const ParityNpa& p) {
  validate(p);
  bool has_top = std::any_of(p.transitions.begin(), p.transitions.end(),
                             [](const Transition& t) { return t.dst == kTopState; });
  std::uint32_t states = p.n + (has_top ? 1 : 0);
  Printer pr;
  pr.header_common(states, p.initial, p.letters);
  pr.out += "acc-name: parity max odd " + std::to_string(p.c) + "\n";
  pr.out += "Acceptance: " + std::to_string(p.c) + " " +
            render_acc(parity_formula(false, false, p.c)) + "\n";
  if (has_top) pr.out += "top-state: " + std::to_string(p.n) + "\n";
  pr.out += "properties: trans-labels explicit-labels trans-acc\n";
  pr.body_begin();
  for (std::uint32_t s = 0; s < p.n; ++s) {
    pr.state_line(s, "");
    for (std::uint32_t a = 0; a < p.letters.size(); ++a)
      for (std::uint32_t i = 0; i < p.transitions.size(); ++i) {
        const Transition& t = p.transitions[i];
        if (t.src != s || t.letter != a) continue;
        std::uint32_t dst = t.dst == kTopState ? p.n : t.dst;
        pr.edge_line(a, dst, {p.pri[i] - 1});
      }
  }
  if (has_top) {
    pr.state_line(p.n, "\xe2\x8a\xa4");
    std::uint32_t loop_pri = p.even_ceiling();  // dominating even self-loop
    for (std::uint32_t a = 0; a < p.letters.size(); ++a) pr.edge_line(a, p.n, {loop_pri - 1});
  }
  pr.body_end();
  return pr.out;
}

std::string print_hoa(const OnePairRabinNpa& r) {
  validate(r);
  bool has_top = std::any_of(r.transitions.begin(), r.transitions.end(),
                             [](const Transition& t) { return t.dst == kTopState; });
  std::uint32_t states = r.n + (has_top ? 1 : 0);
  Printer pr;
  pr.header_common(states, r.initial, r.letters);
  bool buchi = r.rejecting.empty();
  if (buchi) {
    pr.out += "acc-name: Buchi\n";
    pr.out += "Acceptance: 1 Inf(0)\n";
  } else {
    pr.out += "acc-name: Rabin 1\n";
    pr.out += "Acceptance: 2 (Fin(0) & Inf(1))\n";
  }
  if (has_top) pr.out += "top-state: " + std::to_string(r.n) + "\n";
  pr.out += "properties: trans-labels explicit-labels trans-acc\n";
  pr.body_begin();
  std::uint32_t inf_set = buchi ? 0 : 1;
  for (std::uint32_t s = 0; s < r.n; ++s) {
    pr.state_line(s, "");
    for (std::uint32_t a = 0; a < r.letters.size(); ++a)
      for (std::uint32_t i = 0; i < r.transitions.size(); ++i) {
        const Transition& t = r.transitions[i];
        if (t.src != s || t.letter != a) continue;
        std::vector<std::uint32_t> marks;
        if (!buchi && std::binary_search(r.rejecting.begin(), r.rejecting.end(), i))
          marks.push_back(0);
        if (std::binary_search(r.accepting.begin(), r.accepting.end(), i))
          marks.push_back(inf_set);
        pr.edge_line(a, t.dst == kTopState ? r.n : t.dst, marks);
      }
  }
  if (has_top) {
    pr.state_line(r.n, "\xe2\x8a\xa4");
    for (std::uint32_t a = 0; a < r.letters.size(); ++a) pr.edge_line(a, r.n, {inf_set});
  }
  pr.body_end();
  return pr.out;
}

std::string print_hoa(const DetRabinAutomaton& d) {
  Printer pr;
  pr.header_common(d.state_count(), {d.initial}, d.letters);
  pr.out += "acc-name: Rabin " + std::to_string(d.pairs.size()) + "\n";
  std::string formula;
  if (d.pairs.empty()) {
    formula = "f";
  } else {
    for (std::size_t j = 0; j < d.pairs.size(); ++j) {
      if (j) formula += " | ";
      formula += "(Fin(" + std::to_string(2 * j) + ") & Inf(" + std::to_string(2 * j + 1) + "))";
    }
  }
  pr.out += "Acceptance: " + std::to_string(2 * d.pairs.size()) + " " + formula + "\n";
  if (!d.pairs.empty()) {
    pr.out += "pair-names:";
    for (const RabinPair& pair : d.pairs) pr.out += " " + quote(pair.name);
    pr.out += "\n";
  }
  pr.out += "properties: trans-labels explicit-labels trans-acc deterministic\n";
  pr.body_begin();
  std::vector<std::vector<std::uint32_t>> marks(d.delta.size());
  for (std::size_t j = 0; j < d.pairs.size(); ++j) {
    for (std::uint32_t tid : d.pairs[j].rejecting)
      marks[tid].push_back(static_cast<std::uint32_t>(2 * j));
    for (std::uint32_t tid : d.pairs[j].accepting)
      marks[tid].push_back(static_cast<std::uint32_t>(2 * j + 1));
  }
  for (auto& m : marks) std::sort(m.begin(), m.end());
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    pr.state_line(s, d.state_labels[s]);
    for (std::uint32_t a = 0; a < d.letters.size(); ++a) {
      std::uint32_t tid = d.transition_id(s, a);
      pr.edge_line(a, d.delta[tid], marks[tid]);
    }
  }
  pr.body_end();
  return pr.out;
}

std::string print_hoa(const DetParityAutomaton& d, ParityStyle style) {
  Printer pr;
  pr.header_common(d.state_count(), {d.initial}, d.letters);
  std::uint32_t K = d.max_co + 1;
  bool min = style == ParityStyle::MinEven;
  pr.out += std::string("acc-name: parity ") + (min ? "min" : "max") + " even " +
            std::to_string(K) + "\n";
  pr.out +=
      "Acceptance: " + std::to_string(K) + " " + render_acc(parity_formula(min, true, K)) + "\n";
  pr.out += "properties: trans-labels explicit-labels trans-acc deterministic colored\n";
  pr.body_begin();
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    pr.state_line(s, d.state_labels[s]);
    for (std::uint32_t a = 0; a < d.letters.size(); ++a) {
      std::uint32_t tid = d.transition_id(s, a);
      std::uint32_t co = d.co_priority[tid];
      pr.edge_line(a, d.delta[tid], {min ? co : max_parity_priority(d, co)});
    }
  }
  pr.body_end();
  return pr.out;
}

}  // namespace paradet
