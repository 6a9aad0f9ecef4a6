#!/usr/bin/env python3
"""Writes fixture50.jsonl: 50 focal-method / unit-test pairs in the supported subset."""
import json
import sys

PAIRS = [
    # accessors and predicates
    ("public boolean isEmpty() { return 0 == size; }",
     "@Test public void shouldReportEmpty() { Stack stack = new Stack(); assertTrue(stack.isEmpty()); }"),
    ("public boolean isFull() { return size == capacity; }",
     "@Test public void shouldReportFull() { Stack stack = new Stack(1); stack.push(7); assertTrue(stack.isFull()); }"),
    ("public int getSize() { return size; }",
     "@Test public void testGetSize() { Stack stack = new Stack(); stack.push(3); assertEquals(1, stack.getSize()); }"),
    ("public String getName() { return name; }",
     "@Test public void testGetName() { Person person = new Person(\"Ada\"); assertEquals(\"Ada\", person.getName()); }"),
    ("public void setName(String name) { this.name = name; }",
     "@Test public void testSetName() { Person person = new Person(\"Ada\"); person.setName(\"Bob\"); assertEquals(\"Bob\", person.getName()); }"),
    ("public boolean hasChildren() { return children != null && children.size() > 0; }",
     "@Test public void testHasChildren() { Node node = new Node(); node.addChild(new Node()); assertTrue(node.hasChildren()); }"),
    ("public boolean isAdult() { return age >= 18; }",
     "@Test public void testIsAdult() { Person person = new Person(\"Ada\", 30); assertTrue(person.isAdult()); }"),
    # arithmetic
    ("public int add(int a, int b) { return a + b; }",
     "@Test public void testAdd() { Calculator calc = new Calculator(); assertEquals(5, calc.add(2, 3)); }"),
    ("public int subtract(int a, int b) { return a - b; }",
     "@Test public void testSubtract() { Calculator calc = new Calculator(); assertEquals(1, calc.subtract(3, 2)); }"),
    ("public int multiply(int a, int b) { return a * b; }",
     "@Test public void testMultiply() { Calculator calc = new Calculator(); assertEquals(6, calc.multiply(2, 3)); }"),
    ("public double divide(double a, double b) { if (b == 0) { throw new ArithmeticException(\"division by zero\"); } return a / b; }",
     "@Test public void testDivideByZero() { Calculator calc = new Calculator(); try { calc.divide(1, 0); fail(\"expected exception\"); } catch (ArithmeticException e) { assertEquals(\"division by zero\", e.getMessage()); } }"),
    ("public int max(int a, int b) { if (a > b) { return a; } return b; }",
     "@Test public void testMax() { Calculator calc = new Calculator(); assertEquals(9, calc.max(4, 9)); assertEquals(9, calc.max(9, 4)); }"),
    ("public int min(int a, int b) { return a < b ? a : b; }",
     "@Test public void testMin() { Calculator calc = new Calculator(); assertEquals(4, calc.min(4, 9)); assertEquals(4, calc.min(9, 4)); }"),
    ("public int abs(int value) { if (value < 0) { return -value; } return value; }",
     "@Test public void testAbs() { Calculator calc = new Calculator(); assertEquals(3, calc.abs(-3)); assertEquals(3, calc.abs(3)); }"),
    ("public int square(int n) { return n * n; }",
     "@Test public void testSquare() { Calculator calc = new Calculator(); assertEquals(16, calc.square(4)); }"),
    ("public double average(int a, int b) { return (a + b) / 2.0; }",
     "@Test public void testAverage() { Calculator calc = new Calculator(); assertEquals(2.5, calc.average(2, 3), 0.001); }"),
    # conversions
    ("public double kmToMiles(double km) { return km / 1.609344; }",
     "@Test public void testKmToMiles() { Converter converter = new Converter(); assertEquals(1.0, converter.kmToMiles(1.609344), 0.0001); }"),
    ("public double milesToKm(double miles) { return miles * 1.609344; }",
     "@Test public void testMilesToKm() { Converter converter = new Converter(); assertEquals(1.609344, converter.milesToKm(1.0), 0.0001); }"),
    ("public double celsiusToFahrenheit(double celsius) { return celsius * 9 / 5 + 32; }",
     "@Test public void testCelsiusToFahrenheit() { Converter converter = new Converter(); assertEquals(212.0, converter.celsiusToFahrenheit(100), 0.001); }"),
    ("public double fahrenheitToCelsius(double fahrenheit) { return (fahrenheit - 32) * 5 / 9; }",
     "@Test public void testFahrenheitToCelsius() { Converter converter = new Converter(); assertEquals(100.0, converter.fahrenheitToCelsius(212), 0.001); }"),
    ("public long secondsToMillis(long seconds) { return seconds * 1000L; }",
     "@Test public void testSecondsToMillis() { Converter converter = new Converter(); assertEquals(3000L, converter.secondsToMillis(3)); }"),
    # loops over arrays
    ("public int sum(int[] values) { int total = 0; for (int v : values) { total += v; } return total; }",
     "@Test public void testSum() { ArrayUtil util = new ArrayUtil(); int[] values = {1, 2, 3}; assertEquals(6, util.sum(values)); }"),
    ("public int countPositive(int[] values) { int count = 0; for (int i = 0; i < values.length; i++) { if (values[i] > 0) { count++; } } return count; }",
     "@Test public void testCountPositive() { ArrayUtil util = new ArrayUtil(); int[] values = {-1, 2, 3}; assertEquals(2, util.countPositive(values)); }"),
    ("public int indexOf(int[] values, int target) { for (int i = 0; i < values.length; i++) { if (values[i] == target) { return i; } } return -1; }",
     "@Test public void testIndexOf() { ArrayUtil util = new ArrayUtil(); int[] values = {4, 5, 6}; assertEquals(1, util.indexOf(values, 5)); assertEquals(-1, util.indexOf(values, 9)); }"),
    ("public int largest(int[] values) { int best = values[0]; for (int v : values) { if (v > best) { best = v; } } return best; }",
     "@Test public void testLargest() { ArrayUtil util = new ArrayUtil(); int[] values = {4, 9, 6}; assertEquals(9, util.largest(values)); }"),
    ("public boolean contains(int[] values, int target) { for (int v : values) { if (v == target) { return true; } } return false; }",
     "@Test public void testContains() { ArrayUtil util = new ArrayUtil(); int[] values = {4, 5, 6}; assertTrue(util.contains(values, 5)); assertFalse(util.contains(values, 7)); }"),
    ("public int[] reverse(int[] values) { int[] out = new int[values.length]; for (int i = 0; i < values.length; i++) { out[values.length - 1 - i] = values[i]; } return out; }",
     "@Test public void testReverse() { ArrayUtil util = new ArrayUtil(); int[] values = {1, 2, 3}; int[] out = util.reverse(values); assertEquals(3, out[0]); assertEquals(1, out[2]); }"),
    # recursion and number theory
    ("public long factorial(int n) { if (n <= 1) { return 1; } return n * factorial(n - 1); }",
     "@Test public void testFactorial() { MathUtil util = new MathUtil(); assertEquals(120L, util.factorial(5)); assertEquals(1L, util.factorial(0)); }"),
    ("public int fibonacci(int n) { int a = 0; int b = 1; for (int i = 0; i < n; i++) { int t = a + b; a = b; b = t; } return a; }",
     "@Test public void testFibonacci() { MathUtil util = new MathUtil(); assertEquals(8, util.fibonacci(6)); assertEquals(0, util.fibonacci(0)); }"),
    ("public int gcd(int a, int b) { while (b != 0) { int t = a % b; a = b; b = t; } return a; }",
     "@Test public void testGcd() { MathUtil util = new MathUtil(); assertEquals(6, util.gcd(12, 18)); }"),
    ("public boolean isPrime(int n) { if (n < 2) { return false; } for (int i = 2; i * i <= n; i++) { if (n % i == 0) { return false; } } return true; }",
     "@Test public void testIsPrime() { MathUtil util = new MathUtil(); assertTrue(util.isPrime(7)); assertFalse(util.isPrime(8)); }"),
    ("public boolean isEven(int n) { return n % 2 == 0; }",
     "@Test public void testIsEven() { MathUtil util = new MathUtil(); assertTrue(util.isEven(4)); assertFalse(util.isEven(5)); }"),
    ("public int power(int base, int exponent) { int result = 1; for (int i = 0; i < exponent; i++) { result *= base; } return result; }",
     "@Test public void testPower() { MathUtil util = new MathUtil(); assertEquals(8, util.power(2, 3)); assertEquals(1, util.power(5, 0)); }"),
    # strings
    ("public String greet(String name) { return \"Hello, \" + name; }",
     "@Test public void testGreet() { Greeter greeter = new Greeter(); assertEquals(\"Hello, Ada\", greeter.greet(\"Ada\")); }"),
    ("public String repeat(String text, int times) { StringBuilder sb = new StringBuilder(); for (int i = 0; i < times; i++) { sb.append(text); } return sb.toString(); }",
     "@Test public void testRepeat() { TextUtil util = new TextUtil(); assertEquals(\"ababab\", util.repeat(\"ab\", 3)); }"),
    ("public boolean isBlank(String text) { return text == null || text.trim().isEmpty(); }",
     "@Test public void testIsBlank() { TextUtil util = new TextUtil(); assertTrue(util.isBlank(\"  \")); assertFalse(util.isBlank(\"a\")); }"),
    ("public int countVowels(String text) { int count = 0; for (char c : text.toCharArray()) { if (\"aeiou\".indexOf(c) >= 0) { count++; } } return count; }",
     "@Test public void testCountVowels() { TextUtil util = new TextUtil(); assertEquals(5, util.countVowels(\"education\")); }"),
    ("public String capitalize(String word) { if (word.isEmpty()) { return word; } return word.substring(0, 1).toUpperCase() + word.substring(1); }",
     "@Test public void testCapitalize() { TextUtil util = new TextUtil(); assertEquals(\"Hello\", util.capitalize(\"hello\")); }"),
    ("public boolean isPalindrome(String text) { int i = 0; int j = text.length() - 1; while (i < j) { if (text.charAt(i) != text.charAt(j)) { return false; } i++; j--; } return true; }",
     "@Test public void testIsPalindrome() { TextUtil util = new TextUtil(); assertTrue(util.isPalindrome(\"level\")); assertFalse(util.isPalindrome(\"lever\")); }"),
    # state and validation
    ("public void push(int value) { if (size == capacity) { throw new IllegalStateException(\"stack full\"); } items[size] = value; size++; }",
     "@Test public void testPushWhenFull() { Stack stack = new Stack(1); stack.push(1); try { stack.push(2); fail(\"expected exception\"); } catch (IllegalStateException e) { assertEquals(\"stack full\", e.getMessage()); } }"),
    ("public int pop() { if (size == 0) { throw new IllegalStateException(\"stack empty\"); } size--; return items[size]; }",
     "@Test public void testPop() { Stack stack = new Stack(); stack.push(4); assertEquals(4, stack.pop()); assertTrue(stack.isEmpty()); }"),
    ("public void setAge(int age) { if (age < 0) { throw new IllegalArgumentException(\"negative age\"); } this.age = age; }",
     "@Test public void testSetNegativeAge() { Person person = new Person(\"Ada\"); try { person.setAge(-1); fail(\"expected exception\"); } catch (IllegalArgumentException e) { assertEquals(\"negative age\", e.getMessage()); } }"),
    ("public void deposit(double amount) { if (amount <= 0) { throw new IllegalArgumentException(\"amount must be positive\"); } balance += amount; }",
     "@Test public void testDeposit() { Account account = new Account(); account.deposit(50.0); assertEquals(50.0, account.getBalance(), 0.001); }"),
    ("public void withdraw(double amount) { if (amount > balance) { throw new IllegalStateException(\"insufficient funds\"); } balance -= amount; }",
     "@Test public void testWithdrawTooMuch() { Account account = new Account(); account.deposit(10.0); try { account.withdraw(20.0); fail(\"expected exception\"); } catch (IllegalStateException e) { assertEquals(\"insufficient funds\", e.getMessage()); } }"),
    ("public double getBalance() { return balance; }",
     "@Test public void testGetBalance() { Account account = new Account(); account.deposit(25.0); assertEquals(25.0, account.getBalance(), 0.001); }"),
    ("public void increment() { count++; }",
     "@Test public void testIncrement() { Counter counter = new Counter(); counter.increment(); counter.increment(); assertEquals(2, counter.getCount()); }"),
    ("public void reset() { count = 0; }",
     "@Test public void testReset() { Counter counter = new Counter(); counter.increment(); counter.reset(); assertEquals(0, counter.getCount()); }"),
    ("public void clear() { for (int i = 0; i < size; i++) { items[i] = 0; } size = 0; }",
     "@Test public void testClear() { Stack stack = new Stack(); stack.push(1); stack.push(2); stack.clear(); assertTrue(stack.isEmpty()); }"),
    ("public String getProgram(String code) { if (code == null) { return \"unknown\"; } return programs.get(code); }",
     "@Test public void testGetProgram() { Catalog catalog = new Catalog(); catalog.register(\"80\", \"Physics\"); assertEquals(\"Physics\", catalog.getProgram(\"80\")); }"),
    ("public double payment(double principal, double rate, int months) { double monthly = rate / 12; return principal * monthly / (1 - Math.pow(1 + monthly, -months)); }",
     "@Test public void testPayment() { Loan loan = new Loan(); double value = loan.payment(1000.0, 0.12, 12); assertEquals(88.85, value, 0.01); }"),
]


def main() -> None:
    out = sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w", encoding="utf-8")
    for i, (method, test) in enumerate(PAIRS, start=1):
        record = {"id": f"p{i:03d}", "focal_method": method, "test_case": test}
        out.write(json.dumps(record, ensure_ascii=False) + "\n")
    if out is not sys.stdout:
        out.close()
    assert len(PAIRS) == 50, len(PAIRS)


if __name__ == "__main__":
    main()
