#include "memforge/rm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace memforge {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

bool blank_or_comment(const std::vector<std::string>& words) {
  return words.empty() || words.front().front() == '#';
}

int parse_register(const std::string& word, std::size_t line_no, int registers) {
  for (char ch : word)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError(line_no, 1, "register index '" + word + "' is not a number");
  const int reg = std::stoi(word);
  if (reg < 1 || reg > registers)
    throw ParseError(line_no, 1,
                     "register " + word + " out of range [1.." + std::to_string(registers) + "]");
  return reg;
}

}  // namespace

RegisterMachine parse_rm(const std::string& text) {
  RegisterMachine machine;
  bool have_registers = false, have_start = false, have_halt = false, have_output = false;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> words = split_words(line);
    if (blank_or_comment(words)) continue;

    const std::string& head = words.front();
    if (head == "registers:") {
      if (words.size() != 2) throw ParseError(line_no, 1, "expected 'registers: N'");
      machine.registers = std::stoi(words[1]);
      if (machine.registers < 1) throw ParseError(line_no, 1, "register count must be positive");
      have_registers = true;
    } else if (head == "output:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (std::count(machine.output_alphabet.begin(), machine.output_alphabet.end(), words[i]))
          throw ParseError(line_no, 1, "duplicate output symbol '" + words[i] + "'");
        machine.output_alphabet.push_back(words[i]);
      }
      have_output = true;
    } else if (head == "start:") {
      if (words.size() != 2) throw ParseError(line_no, 1, "expected 'start: label'");
      machine.start = words[1];
      have_start = true;
    } else if (head == "halt:") {
      if (words.size() != 2) throw ParseError(line_no, 1, "expected 'halt: label'");
      machine.halt = words[1];
      have_halt = true;
    } else {
      if (head.back() != ':')
        throw ParseError(line_no, 1, "expected 'label: INSTRUCTION', found '" + head + "'");
      if (!have_registers) throw ParseError(line_no, 1, "'registers:' must precede instructions");
      const std::string label = head.substr(0, head.size() - 1);
      if (machine.instructions.count(label))
        throw ParseError(line_no, 1, "duplicate instruction label '" + label + "'");

      RmInstruction inst;
      if (words.size() >= 2 && words[1] == "ADD") {
        if (words.size() != 5) throw ParseError(line_no, 1, "expected 'label: ADD r lj lk'");
        inst.kind = RmInstruction::Kind::Add;
        inst.reg = parse_register(words[2], line_no, machine.registers);
        inst.target_j = words[3];
        inst.target_k = words[4];
      } else if (words.size() >= 2 && words[1] == "SUB") {
        if (words.size() != 5) throw ParseError(line_no, 1, "expected 'label: SUB r lj lk'");
        inst.kind = RmInstruction::Kind::Sub;
        inst.reg = parse_register(words[2], line_no, machine.registers);
        inst.target_j = words[3];
        inst.target_k = words[4];
      } else if (words.size() >= 2 && words[1] == "WRITE") {
        if (words.size() != 4) throw ParseError(line_no, 1, "expected 'label: WRITE a lnext'");
        inst.kind = RmInstruction::Kind::Write;
        inst.write_symbol = words[2];
        inst.target_j = words[3];
      } else if (words.size() == 2 && words[1] == "HALT") {
        inst.kind = RmInstruction::Kind::Halt;
      } else {
        throw ParseError(line_no, 1, "unknown instruction in '" + line + "'");
      }
      machine.instructions.emplace(label, std::move(inst));
    }
  }

  if (!have_registers) throw ParseError(line_no, 1, "missing 'registers:' header");
  if (!have_start) throw ParseError(line_no, 1, "missing 'start:' header");
  if (!have_halt) throw ParseError(line_no, 1, "missing 'halt:' header");
  (void)have_output;  // an empty output alphabet is legal

  // The halt label carries the (possibly implicit) halt instruction and
  // nothing else; halt instructions may not appear elsewhere.
  auto halt_it = machine.instructions.find(machine.halt);
  if (halt_it == machine.instructions.end()) {
    machine.instructions.emplace(machine.halt, RmInstruction{});
  } else if (halt_it->second.kind != RmInstruction::Kind::Halt) {
    throw ParseError(1, 1, "halt label '" + machine.halt + "' carries a non-HALT instruction");
  }
  for (const auto& [label, inst] : machine.instructions)
    if (inst.kind == RmInstruction::Kind::Halt && label != machine.halt)
      throw ParseError(1, 1, "HALT instruction at '" + label + "' (only allowed at the halt label)");

  if (!machine.instructions.count(machine.start))
    throw ParseError(1, 1, "start label '" + machine.start + "' has no instruction");

  for (const auto& [label, inst] : machine.instructions) {
    auto check_target = [&](const std::string& target) {
      if (!target.empty() && !machine.instructions.count(target))
        throw ParseError(1, 1, "instruction '" + label + "' jumps to undefined label '" + target + "'");
    };
    check_target(inst.target_j);
    check_target(inst.target_k);
    if (inst.kind == RmInstruction::Kind::Write &&
        !std::count(machine.output_alphabet.begin(), machine.output_alphabet.end(), inst.write_symbol))
      throw ParseError(1, 1,
                       "instruction '" + label + "' writes '" + inst.write_symbol +
                           "' which is not in the output alphabet");
  }
  return machine;
}

std::string serialize_rm(const RegisterMachine& machine) {
  std::string out = "registers: " + std::to_string(machine.registers) + "\n";
  out += "output:";
  for (const Symbol& sym : machine.output_alphabet) out += " " + sym;
  out += "\nstart: " + machine.start + "\nhalt: " + machine.halt + "\n";
  for (const auto& [label, inst] : machine.instructions) {
    out += label + ": ";
    switch (inst.kind) {
      case RmInstruction::Kind::Add:
        out += "ADD " + std::to_string(inst.reg) + " " + inst.target_j + " " + inst.target_k;
        break;
      case RmInstruction::Kind::Sub:
        out += "SUB " + std::to_string(inst.reg) + " " + inst.target_j + " " + inst.target_k;
        break;
      case RmInstruction::Kind::Write:
        out += "WRITE " + inst.write_symbol + " " + inst.target_j;
        break;
      case RmInstruction::Kind::Halt:
        out += "HALT";
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace memforge
