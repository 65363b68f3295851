"""Hand-labeled revision fixtures shared by the evolution tests and the
acceptance suite: 25 classified diffs (five per change category) and 20
independence-labeled revisions including the two known false-positive shapes
of the variable heuristic."""

from emitlint.evolution import ChangeCategory, Independence

# (name, category, before_body, after_body)
TAXONOMY_CASES = [
    # --- ParameterChange -------------------------------------------------
    ("send-id", ChangeCategory.PARAMETER_CHANGE,
     ["stock = amount;", "emit Send(msg.sender, id1);", "price = value;"],
     ["stock = amount;", "emit Send(msg.sender, id2);", "price = value;"]),
    ("new-variable", ChangeCategory.PARAMETER_CHANGE,
     ["emit Priced(price);"],
     ["emit Priced(netPrice);"]),
    ("swapped-args", ChangeCategory.PARAMETER_CHANGE,
     ["emit Restocked(stock, price);"],
     ["emit Restocked(price, stock);"]),
    ("widened-args", ChangeCategory.PARAMETER_CHANGE,
     ["emit Sold(to, amount);"],
     ["emit Sold(to, amount, value);"]),
    ("string-description", ChangeCategory.PARAMETER_CHANGE,
     ['emit Status("_mint b");'],
     ['emit Status("initOptinoToken");']),
    # --- Addition --------------------------------------------------------
    ("post-assignment-add", ChangeCategory.ADDITION,
     ["stock = amount;"],
     ["stock = amount;", "emit Restocked(stock, price);"]),
    ("debug-add", ChangeCategory.ADDITION,
     ["price = value;"],
     ["emit Opened();", "price = value;"]),
    ("post-transfer-add", ChangeCategory.ADDITION,
     ["payable(to).transfer(amount);"],
     ["payable(to).transfer(amount);", "emit Sold(to, amount);"]),
    ("add-inside-if", ChangeCategory.ADDITION,
     ["if (value > 0) {", "    price = value;", "}"],
     ["if (value > 0) {", "    price = value;", "    emit Priced(price);",
      "}"]),
    ("trailing-add", ChangeCategory.ADDITION,
     ["stock = amount;", "price = value;"],
     ["stock = amount;", "price = value;", "emit Closed();"]),
    # --- Deletion ---------------------------------------------------------
    ("drop-trailing", ChangeCategory.DELETION,
     ["stock = amount;", "emit Closed();"],
     ["stock = amount;"]),
    ("drop-debug", ChangeCategory.DELETION,
     ["emit Opened();", "price = value;"],
     ["price = value;"]),
    ("drop-mid", ChangeCategory.DELETION,
     ["stock = amount;", "emit Sold(to, amount);", "price = value;"],
     ["stock = amount;", "price = value;"]),
    ("drop-inside-if", ChangeCategory.DELETION,
     ["if (value > 0) {", "    emit Priced(value);", "    price = value;",
      "}"],
     ["if (value > 0) {", "    price = value;", "}"]),
    ("drop-duplicate", ChangeCategory.DELETION,
     ["emit Restocked(stock, price);", "stock = amount;",
      "emit Restocked(stock, price);"],
     ["emit Restocked(stock, price);", "stock = amount;"]),
    # --- Move --------------------------------------------------------------
    ("move-past-assignment", ChangeCategory.MOVE,
     ["emit Priced(value);", "price = value;"],
     ["price = value;", "emit Priced(value);"]),
    ("move-down-two", ChangeCategory.MOVE,
     ["emit Sold(to, amount);", "stock = stock - amount;", "price = value;"],
     ["stock = stock - amount;", "price = value;", "emit Sold(to, amount);"]),
    ("move-after-transfer", ChangeCategory.MOVE,
     ["emit Sold(to, amount);", "stock = stock - amount;",
      "payable(to).transfer(amount);", "price = value;"],
     ["stock = stock - amount;", "payable(to).transfer(amount);",
      "price = value;", "emit Sold(to, amount);"]),
    ("move-out-of-if", ChangeCategory.MOVE,
     ["if (value > 0) {", "    emit Priced(value);", "}", "price = value;"],
     ["if (value > 0) {", "}", "price = value;", "emit Priced(value);"]),
    ("move-up-two", ChangeCategory.MOVE,
     ["stock = amount;", "price = value;", "emit Restocked(stock, price);"],
     ["emit Restocked(stock, price);", "stock = amount;", "price = value;"]),
    # --- Replacement --------------------------------------------------------
    ("escrow", ChangeCategory.REPLACEMENT,
     ["emit EscrowWithdrawn(to, amount);"],
     ["emit EscrowRefunded(to, amount);"]),
    ("open-close", ChangeCategory.REPLACEMENT,
     ["emit Opened();"],
     ["emit Closed();"]),
    ("sold-bought", ChangeCategory.REPLACEMENT,
     ["stock = amount;", "emit Sold(to, amount);"],
     ["stock = amount;", "emit Bought(to, amount);"]),
    ("priced-quoted", ChangeCategory.REPLACEMENT,
     ["emit Priced(value);"],
     ["emit Quoted(value);"]),
    ("restocked-refilled", ChangeCategory.REPLACEMENT,
     ["emit Restocked(stock, price);"],
     ["emit Refilled(stock, price);"]),
]

# Pairs changing both the event name and the arguments fall outside the five
# base categories; they are matched last and labeled Compound.
COMPOUND_CASES = [
    ("old-fresh", ChangeCategory.COMPOUND,
     ["emit Old(value);"],
     ["emit Fresh(stock, price);"]),
    ("sold-moved", ChangeCategory.COMPOUND,
     ["emit Sold(to, amount);"],
     ["emit Moved(value);"]),
    ("priced-audit", ChangeCategory.COMPOUND,
     ["emit Priced(value);"],
     ["emit Audit(to, 1);"]),
    ("status-phase", ChangeCategory.COMPOUND,
     ['emit Status("x");'],
     ["emit Phase(2);"]),
    ("opened-closed1", ChangeCategory.COMPOUND,
     ["emit Opened();"],
     ["emit Closed(1);"]),
]

ABS = Independence.ABSOLUTE_INDEPENDENT
HEU = Independence.HEURISTIC_INDEPENDENT
DEP = Independence.DEPENDENT

# (name, before_body, after_body, expect_absolute, hand_label)
INDEPENDENCE_CASES = [
    ("a1-arg-only",
     ["stock = amount;", "emit Send(msg.sender, id1);"],
     ["stock = amount;", "emit Send(msg.sender, id2);"],
     True, ABS),
    ("a2-addition-only",
     ["stock = amount;"],
     ["stock = amount;", "emit Restocked(stock, price);"],
     True, ABS),
    ("a3-deletion-only",
     ["emit Opened();", "price = value;"],
     ["price = value;"],
     True, ABS),
    ("a4-move-only",
     ["emit Sold(to, amount);", "stock = stock - amount;", "price = value;"],
     ["stock = stock - amount;", "price = value;", "emit Sold(to, amount);"],
     True, ABS),
    ("a5-two-emits",
     ["emit Priced(price);", "stock = amount;", "emit Sold(to, amount);"],
     ["emit Priced(value);", "stock = amount;", "emit Sold(to, value);"],
     True, ABS),
    ("h6-unrelated-local",
     ["uint x = 1;", "emit Send(msg.sender, id1);"],
     ["uint x = 2;", "emit Send(msg.sender, id2);"],
     False, HEU),
    ("h7-addition-next-to-other-change",
     ["uint x = 1;", "stock = amount;"],
     ["uint x = 2;", "stock = amount;", "emit Priced(level);"],
     False, HEU),
    ("h8-move-with-other-change",
     ["uint x = 1;", "emit Sold(to, amount);", "stock = amount;",
      "price = value;"],
     ["uint x = 2;", "stock = amount;", "price = value;",
      "emit Sold(to, amount);"],
     False, HEU),
    ("h9-replacement-with-other-change",
     ["uint x = 1;", "emit Opened();"],
     ["uint x = 2;", "emit Closed();"],
     False, HEU),
    ("h10-read-is-not-a-kill",
     ["uint y = fee + 1;", "emit Priced(fee);"],
     ["uint y = fee + 2;", "emit Priced(fee, stock);"],
     False, HEU),
    ("d11-token-redefined",
     ["id1 = compute();", "emit Send(msg.sender, id1);"],
     ["id1 = recompute();", "emit Send(msg.sender, id2);"],
     False, DEP),
    ("d12-token-passed-to-call",
     ["emit Send(msg.sender, id1);"],
     ["process(id2);", "emit Send(msg.sender, id2);"],
     False, DEP),
    ("d13-added-emit-for-added-assignment",
     ["price = value;"],
     ["price = value;", "total = total + amount;", "emit Updated(total);"],
     False, DEP),
    ("d14-deleted-emit-with-deleted-call",
     ["burn(old);", "emit Gone(old);", "price = value;"],
     ["price = value;"],
     False, DEP),
    ("d15-compound-assign-kill",
     ["emit Priced(fee);"],
     ["fee += surcharge;", "emit Priced(netFee);"],
     False, DEP),
    ("d16-incdec-kill",
     ["emit Audit(count);"],
     ["count++;", "emit Audit(total);"],
     False, DEP),
    # The two known false-positive shapes: the variable heuristic calls them
    # independent, the hand label says dependent.
    ("f17-string-coupled",
     ['mint(100);', 'emit Status("minting 100");'],
     ['mint(200);', 'emit Status("minting 200");'],
     False, DEP),
    ("f18-condition-coupled",
     ["if (value > 10) {", "    emit High(value);", "}"],
     ["if (value > 20) {", "    emit HighCritical(value);", "}"],
     False, DEP),
    ("a19-member-arg-only",
     ["emit Sold(msg.sender, amount);"],
     ["emit Sold(to, amount);"],
     True, ABS),
    ("d20-before-side-call",
     ["register(b2);", "emit Linked(b1);"],
     ["emit Linked(b2);"],
     False, DEP),
]

EXPECTED_HEURISTIC_MISMATCHES = {"f17-string-coupled", "f18-condition-coupled"}
