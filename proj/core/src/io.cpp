#include "pcsync/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace pcsync {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool blank_or_comment(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  while (!text.empty()) {
    auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    out.push_back({number++, line});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return out;
}

std::size_t parse_count(const Token& tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
    throw ParseError(line, tok.column, std::string("expected ") + what + ", got '" +
                                           std::string(tok.text) + "'");
  return value;
}

bool wide_alphabet(const std::vector<std::string>& alphabet) {
  return std::any_of(alphabet.begin(), alphabet.end(),
                     [](const std::string& s) { return s.size() > 1; });
}

Word parse_word_at(std::string_view text, const std::vector<std::string>& alphabet,
                   std::size_t line) {
  std::map<std::string_view, Letter> index;
  for (Letter i = 0; i < alphabet.size(); ++i) index.emplace(alphabet[i], i);
  Word w;
  if (wide_alphabet(alphabet)) {
    for (const auto& tok : tokenize(text)) {
      auto it = index.find(tok.text);
      if (it == index.end())
        throw ParseError(line, tok.column, "unknown symbol '" + std::string(tok.text) + "'");
      w.push_back(it->second);
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == ' ' || c == '\t' || c == '\r') continue;
      auto it = index.find(text.substr(i, 1));
      if (it == index.end())
        throw ParseError(line, i + 1, std::string("unknown symbol '") + c + "'");
      w.push_back(it->second);
    }
  }
  return w;
}

}  // namespace

PartialAutomaton parse_automaton(std::string_view text) {
  std::vector<Line> lines;
  for (const auto& l : split_lines(text))
    if (!blank_or_comment(l.text)) lines.push_back(l);
  if (lines.empty()) throw ParseError(1, 1, "missing 'dfa <n> <k>' header");

  auto header = tokenize(lines[0].text);
  if (header.size() != 3 || header[0].text != "dfa")
    throw ParseError(lines[0].number, 1, "expected header 'dfa <n> <k>'");
  std::size_t n = parse_count(header[1], lines[0].number, "state count");
  std::size_t k = parse_count(header[2], lines[0].number, "alphabet size");
  if (n == 0) throw ParseError(lines[0].number, header[1].column, "state count must be positive");
  if (k == 0) throw ParseError(lines[0].number, header[2].column, "alphabet size must be positive");

  if (lines.size() < 2) throw ParseError(lines[0].number + 1, 1, "missing symbol line");
  auto symbols = tokenize(lines[1].text);
  if (symbols.size() != k)
    throw ParseError(lines[1].number, 1, "expected " + std::to_string(k) + " symbols, got " +
                                             std::to_string(symbols.size()));
  std::vector<std::string> alphabet;
  for (const auto& s : symbols) {
    if (std::find(alphabet.begin(), alphabet.end(), s.text) != alphabet.end())
      throw ParseError(lines[1].number, s.column, "duplicate symbol '" + std::string(s.text) + "'");
    alphabet.emplace_back(s.text);
  }

  if (lines.size() != n + 2) {
    std::size_t at = lines.size() < n + 2 ? lines.back().number + 1 : lines[n + 2].number;
    throw ParseError(at, 1, "expected " + std::to_string(n) + " transition rows, got " +
                                std::to_string(lines.size() - 2));
  }
  std::vector<State> table;
  table.reserve(n * k);
  for (std::size_t row = 0; row < n; ++row) {
    const Line& l = lines[row + 2];
    auto fields = tokenize(l.text);
    if (fields.size() != k)
      throw ParseError(l.number, 1, "expected " + std::to_string(k) + " fields, got " +
                                        std::to_string(fields.size()));
    for (const auto& f : fields) {
      if (f.text == "-") {
        table.push_back(kUndefined);
        continue;
      }
      std::size_t target = parse_count(f, l.number, "state index or '-'");
      if (target >= n) throw ParseError(l.number, f.column, "state index out of range");
      table.push_back(static_cast<State>(target));
    }
  }
  return PartialAutomaton(n, std::move(alphabet), std::move(table));
}

std::string serialize_automaton(const PartialAutomaton& a) {
  std::ostringstream os;
  os << "dfa " << a.size() << ' ' << a.alphabet_size() << '\n';
  for (std::size_t i = 0; i < a.alphabet_size(); ++i)
    os << (i ? " " : "") << a.alphabet()[i];
  os << '\n';
  for (State q = 0; q < a.size(); ++q) {
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      if (x) os << ' ';
      State t = a.next(q, x);
      if (t == kUndefined) os << '-';
      else os << t;
    }
    os << '\n';
  }
  return os.str();
}

PrefixCode parse_code(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && blank_or_comment(lines[i].text)) ++i;
  if (i == lines.size()) throw ParseError(1, 1, "missing 'code <symbols...>' header");
  auto header = tokenize(lines[i].text);
  if (header.empty() || header[0].text != "code")
    throw ParseError(lines[i].number, 1, "expected header 'code <symbols...>'");
  if (header.size() < 2) throw ParseError(lines[i].number, 1, "code header lists no symbols");
  std::vector<std::string> alphabet;
  for (std::size_t s = 1; s < header.size(); ++s) {
    if (std::find(alphabet.begin(), alphabet.end(), header[s].text) != alphabet.end())
      throw ParseError(lines[i].number, header[s].column,
                       "duplicate symbol '" + std::string(header[s].text) + "'");
    alphabet.emplace_back(header[s].text);
  }

  std::vector<Word> words;
  std::vector<std::size_t> line_of;
  for (++i; i < lines.size(); ++i) {
    std::string_view body = lines[i].text;
    auto pos = body.find_first_not_of(" \t\r");
    if (pos != std::string_view::npos && body[pos] == '#') continue;
    // A trailing newline does not introduce an empty codeword.
    if (pos == std::string_view::npos && i + 1 == lines.size() && body.empty()) continue;
    Word w = parse_word_at(body, alphabet, lines[i].number);
    if (w.empty()) throw ParseError(lines[i].number, 1, "empty codeword");
    words.push_back(std::move(w));
    line_of.push_back(lines[i].number);
  }
  try {
    return PrefixCode(alphabet, std::move(words));
  } catch (const PrefixViolation& e) {
    std::size_t shorter = line_of[e.prefix_index];
    std::size_t longer = line_of[e.longer_index];
    throw ParseError(longer, 1, std::string(e.what()) + " (lines " + std::to_string(shorter) +
                                    " and " + std::to_string(longer) + ")");
  }
}

std::string serialize_code(const PrefixCode& code) {
  std::string out = "code";
  for (const auto& s : code.alphabet()) out += ' ' + s;
  out += '\n';
  for (const auto& w : code.words()) out += render_word(w, code.alphabet()) + '\n';
  return out;
}

SetCoverInstance parse_set_cover(std::string_view text) {
  std::vector<Line> lines;
  for (const auto& l : split_lines(text))
    if (!blank_or_comment(l.text)) lines.push_back(l);
  if (lines.empty()) throw ParseError(1, 1, "missing 'setcover <p>' header");
  auto header = tokenize(lines[0].text);
  if (header.size() != 2 || header[0].text != "setcover")
    throw ParseError(lines[0].number, 1, "expected header 'setcover <p>'");
  SetCoverInstance inst;
  inst.elements = parse_count(header[1], lines[0].number, "element count");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::size_t> set;
    for (const auto& tok : tokenize(lines[i].text)) {
      std::size_t x = parse_count(tok, lines[i].number, "element");
      if (x < 1 || x > inst.elements)
        throw ParseError(lines[i].number, tok.column, "element out of range");
      set.push_back(x);
    }
    inst.sets.push_back(std::move(set));
  }
  inst.validate();
  return inst;
}

std::string serialize_set_cover(const SetCoverInstance& instance) {
  std::ostringstream os;
  os << "setcover " << instance.elements << '\n';
  for (const auto& set : instance.sets) {
    for (std::size_t i = 0; i < set.size(); ++i) os << (i ? " " : "") << set[i];
    os << '\n';
  }
  return os.str();
}

std::string render_word(const Word& w, const std::vector<std::string>& alphabet) {
  const bool wide = wide_alphabet(alphabet);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet.size()) throw InputError("letter index out of range");
    if (wide && i > 0) out += ' ';
    out += alphabet[w[i]];
  }
  return out;
}

Word parse_word(std::string_view text, const std::vector<std::string>& alphabet) {
  return parse_word_at(text, alphabet, 1);
}

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const PartialAutomaton& a) {
  std::ostringstream os;
  os << "digraph automaton {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (State q = 0; q < a.size(); ++q) os << "  " << q << ";\n";
  for (State q = 0; q < a.size(); ++q)
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      State t = a.next(q, x);
      if (t == kUndefined) continue;
      os << "  " << q << " -> " << t << " [label=\"" << dot_escape(a.alphabet()[x]) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pcsync
